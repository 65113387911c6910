//! Flat little-endian dump of a kernel: degree header, grid axes, complex
//! samples, zero limits.  Used for trace replay.

use crate::{Axis, KernelError, PauliValue, PhotonAxes, WickKernel, XAxes, ZeroLimit};
use num_complex::Complex64;

const MAGIC: &[u8; 4] = b"WKD1";

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_f64(out: &mut Vec<u8>, v: f64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_axis(out: &mut Vec<u8>, a: &Axis) {
    put_u64(out, a.len() as u64);
    a.nodes.iter().for_each(|&x| put_f64(out, x));
}

fn put_pauli(out: &mut Vec<u8>, p: &PauliValue) {
    for c in std::iter::once(&p.w0).chain(p.wvec.iter()) {
        put_f64(out, c.re);
        put_f64(out, c.im);
    }
}

pub fn to_bytes(k: &WickKernel) -> Vec<u8> {
    let mut out = Vec::with_capacity(64 + 64 * k.values.len());
    out.extend_from_slice(MAGIC);
    put_u64(&mut out, k.m as u64);
    put_u64(&mut out, k.n as u64);
    put_u64(&mut out, k.scalar as u64);
    for a in 0..3 {
        put_axis(&mut out, k.x.axis(a));
    }
    for s in &k.slots {
        for a in 0..3 {
            put_axis(&mut out, s.axis(a));
        }
        put_u64(&mut out, s.npol as u64);
    }
    put_u64(&mut out, k.values.len() as u64);
    k.values.iter().for_each(|v| put_pauli(&mut out, v));
    put_u64(&mut out, k.zero_limit.len() as u64);
    for z in &k.zero_limit {
        put_u64(&mut out, z.slot as u64);
        put_u64(&mut out, z.values.len() as u64);
        z.values.iter().flatten().for_each(|v| put_pauli(&mut out, v));
    }
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8], KernelError> {
        let s = self
            .buf
            .get(self.pos..self.pos + n)
            .ok_or_else(|| KernelError::Dump(format!("truncated at byte {}", self.pos)))?;
        self.pos += n;
        Ok(s)
    }

    fn u64(&mut self) -> Result<u64, KernelError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64, KernelError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn len(&mut self) -> Result<usize, KernelError> {
        let n = self.u64()? as usize;
        if n > self.buf.len() {
            return Err(KernelError::Dump(format!("implausible length {n}")));
        }
        Ok(n)
    }

    fn axis(&mut self) -> Result<Axis, KernelError> {
        let n = self.len()?;
        Ok(Axis {
            nodes: (0..n).map(|_| self.f64()).collect::<Result<_, _>>()?,
        })
    }

    fn pauli(&mut self) -> Result<PauliValue, KernelError> {
        let mut c = [Complex64::new(0.0, 0.0); 4];
        for z in c.iter_mut() {
            *z = Complex64::new(self.f64()?, self.f64()?);
        }
        Ok(PauliValue::new(c[0], [c[1], c[2], c[3]]))
    }
}

pub fn from_bytes(buf: &[u8]) -> Result<WickKernel, KernelError> {
    let mut r = Reader { buf, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(KernelError::Dump("bad magic".into()));
    }
    let m = r.u64()? as usize;
    let n = r.u64()? as usize;
    let scalar = r.u64()? != 0;
    let x = XAxes {
        x0: r.axis()?,
        xpar: r.axis()?,
        xperp: r.axis()?,
    };
    let mut slots = Vec::with_capacity(m + n);
    for _ in 0..m + n {
        slots.push(PhotonAxes {
            kmag: r.axis()?,
            ktheta: r.axis()?,
            kphi: r.axis()?,
            npol: r.u64()? as usize,
        });
    }
    let mut k = WickKernel::zeros(m, n, x, slots)?;
    k.scalar = scalar;
    if r.len()? != k.values.len() {
        return Err(KernelError::Dump("sample count does not match axes".into()));
    }
    for v in k.values.iter_mut() {
        *v = r.pauli()?;
    }
    for _ in 0..r.len()? {
        let slot = r.u64()? as usize;
        let len = r.len()?;
        let mut values = Vec::with_capacity(len);
        for _ in 0..len {
            values.push([r.pauli()?, r.pauli()?, r.pauli()?]);
        }
        k.zero_limit.push(ZeroLimit { slot, values });
    }
    if r.pos != buf.len() {
        return Err(KernelError::Dump("trailing bytes".into()));
    }
    Ok(k)
}
