//! Chebyshev interpolation on an interval, used for every `r`-dependence.

/// Interpolant through the values at the Chebyshev points of the first kind.
#[derive(Clone, Debug, PartialEq)]
pub struct Cheb {
    pub a: f64,
    pub b: f64,
    pub coeffs: Vec<f64>,
    /// Set when all nodal values coincide; evaluation is then exact.
    pub constant: Option<f64>,
}

impl Cheb {
    pub fn nodes(a: f64, b: f64, n: usize) -> Vec<f64> {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        (0..n)
            .map(|j| mid + half * (std::f64::consts::PI * (j as f64 + 0.5) / n as f64).cos())
            .collect()
    }

    pub fn from_values(a: f64, b: f64, values: &[f64]) -> Self {
        let n = values.len();
        let constant = values.iter().all(|&v| v.to_bits() == values[0].to_bits()).then(|| values[0]);
        let mut coeffs = vec![0.0; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let s: f64 = values
                .iter()
                .enumerate()
                .map(|(j, f)| f * (std::f64::consts::PI * k as f64 * (j as f64 + 0.5) / n as f64).cos())
                .sum();
            *c = 2.0 * s / n as f64;
        }
        coeffs[0] *= 0.5;
        Self { a, b, coeffs, constant }
    }

    pub fn from_fn(a: f64, b: f64, n: usize, f: impl FnMut(f64) -> f64) -> Self {
        let v: Vec<f64> = Self::nodes(a, b, n).into_iter().map(f).collect();
        Self::from_values(a, b, &v)
    }

    fn t(&self, x: f64) -> f64 {
        (2.0 * x - self.a - self.b) / (self.b - self.a)
    }

    pub fn eval(&self, x: f64) -> f64 {
        if let Some(c) = self.constant {
            return c;
        }
        clenshaw(&self.coeffs, self.t(x))
    }

    pub fn derivative(&self, x: f64) -> f64 {
        if self.constant.is_some() {
            return 0.0;
        }
        let n = self.coeffs.len();
        if n < 2 {
            return 0.0;
        }
        let mut d = vec![0.0; n + 1];
        for k in (1..n).rev() {
            d[k - 1] = d[k + 1] + 2.0 * k as f64 * self.coeffs[k];
        }
        d[0] *= 0.5;
        d.truncate(n - 1);
        clenshaw(&d, self.t(x)) * 2.0 / (self.b - self.a)
    }
}

fn clenshaw(c: &[f64], t: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * t * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    t * b1 - b2 + c.first().copied().unwrap_or(0.0)
}
