//! Vacuum expectations of products `W₁ F W₂ F … W_L` with every photon
//! contracted: the fast path for `W₀₁ F W₁₀` and a generic engine for
//! products with up to two contractions.

use crate::level::{Link, StepCtx};
use crate::quad::SphereRule;
use model_seed::{dot_m, dot_v, Degree2, KernelSource, XPoint};
use pauli_kernels::{PauliValue, Polarization};

/// `Δw̃₀₀(r; X) = −Υ(X)² ∫ m² Σ_λ w₀₁(X; k) F(X + k) w₁₀(X; k)`.
pub fn delta00(ctx: &StepCtx, chain: &[Link], a: f64, y: &XPoint) -> PauliValue {
    let src = ctx.prev.source();
    if src.coupling() == 0.0 {
        return PauliValue::ZERO;
    }
    let (lo, hi) = ctx.radial_range(y.x0);
    let pm = src.polarization();
    let rule = &ctx.rules.single;
    let mut acc = PauliValue::ZERO;
    for (k, wk) in rule.radial(lo, hi, &ctx.breaks(y.x0)) {
        let m2 = src.contraction_weight(k);
        if m2 == 0.0 {
            continue;
        }
        for (d, wd) in &rule.dirs {
            let kv = d.map(|c| c * k);
            let f = ctx.finner(chain, a, &y.plus(&kv));
            if f == 0.0 {
                continue;
            }
            let v = src.v01(y, &kv);
            let p = pm.projector(*d);
            let mut s = PauliValue::ZERO;
            for i in 0..3 {
                let mut u = PauliValue::ZERO;
                for j in 0..3 {
                    if p[i][j] != 0.0 {
                        u += v[j].adjoint() * p[i][j];
                    }
                }
                s += v[i] * u;
            }
            acc += s * (wk * wd * m2 * f);
        }
    }
    let u = ctx.upsilon(chain, a, y);
    acc * (-u * u)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    W01,
    W10,
    W11,
    W02,
    W20,
}

impl Factor {
    pub fn creators(self) -> usize {
        match self {
            Factor::W01 | Factor::W02 => 0,
            Factor::W10 | Factor::W11 => 1,
            Factor::W20 => 2,
        }
    }

    pub fn annihilators(self) -> usize {
        match self {
            Factor::W10 | Factor::W20 => 0,
            Factor::W01 | Factor::W11 => 1,
            Factor::W02 => 2,
        }
    }
}

/// Pair index of every creator and annihilator slot, per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub creators: Vec<Vec<usize>>,
    pub annihilators: Vec<Vec<usize>>,
    pub pairs: usize,
}

/// All complete contractions in which each annihilator pairs with a creator
/// standing to its right.
pub fn matchings(factors: &[Factor]) -> Vec<Matching> {
    let ann: Vec<(usize, usize)> = factors
        .iter()
        .enumerate()
        .flat_map(|(i, f)| (0..f.annihilators()).map(move |s| (i, s)))
        .collect();
    let cre: Vec<(usize, usize)> = factors
        .iter()
        .enumerate()
        .flat_map(|(i, f)| (0..f.creators()).map(move |s| (i, s)))
        .collect();
    if ann.len() != cre.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut used = vec![false; cre.len()];
    let mut assign = vec![0usize; ann.len()];
    fn rec(
        a: usize,
        ann: &[(usize, usize)],
        cre: &[(usize, usize)],
        used: &mut [bool],
        assign: &mut [usize],
        factors: &[Factor],
        out: &mut Vec<Matching>,
    ) {
        if a == ann.len() {
            let mut m = Matching {
                creators: factors.iter().map(|f| vec![0; f.creators()]).collect(),
                annihilators: factors.iter().map(|f| vec![0; f.annihilators()]).collect(),
                pairs: ann.len(),
            };
            for (p, (&(i, s), &c)) in ann.iter().zip(assign.iter()).enumerate() {
                m.annihilators[i][s] = p;
                m.creators[cre[c].0][cre[c].1] = p;
            }
            out.push(m);
            return;
        }
        for c in 0..cre.len() {
            if !used[c] && cre[c].0 > ann[a].0 {
                used[c] = true;
                assign[a] = c;
                rec(a + 1, ann, cre, used, assign, factors, out);
                used[c] = false;
            }
        }
    }
    rec(0, &ann, &cre, &mut used, &mut assign, factors, &mut out);
    out
}

struct Photon {
    k: [f64; 3],
    weight: f64,
    pols: Vec<[f64; 3]>,
}

fn photon_points(src: &dyn KernelSource, rule: &SphereRule, breaks: &[f64]) -> Vec<Photon> {
    let pm = src.polarization();
    let mut pts = Vec::new();
    for (k, wk) in rule.radial(0.0, 1.0, breaks) {
        let m2 = src.contraction_weight(k);
        if m2 == 0.0 {
            continue;
        }
        for (d, wd) in &rule.dirs {
            let (th, ph) = (d[2].clamp(-1.0, 1.0).acos(), d[1].atan2(d[0]));
            let pols = (0..pm.count())
                .map(|l| pm.vector(th, ph, Polarization::from_index(l)))
                .collect();
            pts.push(Photon {
                k: d.map(|c| c * k),
                weight: wk * wd * m2,
                pols,
            });
        }
    }
    pts
}

fn minus(x: &XPoint, k: &[f64; 3]) -> XPoint {
    XPoint::new(
        x.x0 - (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt(),
        [x.v[0] - k[0], x.v[1] - k[1], x.v[2] - k[2]],
    )
}

/// Vacuum expectation `(−1)^{L−1} Υ(X)² ⟨W₁ F W₂ F … W_L⟩` at content `X`,
/// summed over all complete contractions.
pub fn vacuum_term(
    ctx: &StepCtx,
    chain: &[Link],
    a: f64,
    y: &XPoint,
    factors: &[Factor],
    rule: &SphereRule,
) -> PauliValue {
    let src = ctx.prev.source();
    if src.coupling() == 0.0 || factors.is_empty() {
        return PauliValue::ZERO;
    }
    let mut breaks = ctx.breaks(0.0);
    breaks.retain(|b| *b > 0.0);
    let pts = photon_points(src, rule, &breaks);
    let npol = src.polarization().count();
    let l = factors.len();
    let mut total = PauliValue::ZERO;
    for m in matchings(factors) {
        let np = m.pairs;
        let mut idx = vec![0usize; np];
        let mut pol = vec![0usize; np];
        let count = pts.len().pow(np as u32);
        for flat in 0..count {
            let mut t = flat;
            for q in idx.iter_mut() {
                *q = t % pts.len();
                t /= pts.len();
            }
            let w: f64 = idx.iter().map(|&q| pts[q].weight).product();
            for pflat in 0..npol.pow(np as u32) {
                let mut t = pflat;
                for q in pol.iter_mut() {
                    *q = t % npol;
                    t /= npol;
                }
                let kv = |p: usize| &pts[idx[p]].k;
                let ev = |p: usize| &pts[idx[p]].pols[pol[p]];
                let mut state = *y;
                let mut acc = PauliValue::identity();
                let mut zero = false;
                for j in (0..l).rev() {
                    let mut xj = state;
                    for &p in &m.annihilators[j] {
                        xj = minus(&xj, kv(p));
                    }
                    let cr = &m.creators[j];
                    let an = &m.annihilators[j];
                    let kval = match factors[j] {
                        Factor::W01 => dot_v(ev(an[0]), &src.v01(&xj, kv(an[0]))),
                        Factor::W10 => dot_v(ev(cr[0]), &src.v01(&xj, kv(cr[0]))).adjoint(),
                        Factor::W11 => dot_m(ev(cr[0]), &src.w2(Degree2::D11, &xj, kv(cr[0]), kv(an[0])), ev(an[0])),
                        Factor::W02 => dot_m(ev(an[0]), &src.w2(Degree2::D02, &xj, kv(an[0]), kv(an[1])), ev(an[1])),
                        Factor::W20 => {
                            dot_m(ev(cr[0]), &src.w2(Degree2::D02, &xj, kv(cr[0]), kv(cr[1])), ev(cr[1])).adjoint()
                        }
                    };
                    let mut next = xj;
                    for &p in cr {
                        next = next.plus(kv(p));
                    }
                    acc = kval * acc;
                    if j > 0 {
                        let f = ctx.finner(chain, a, &next);
                        if f == 0.0 {
                            zero = true;
                            break;
                        }
                        acc = acc * f;
                    }
                    state = next;
                }
                if !zero {
                    total += acc * w;
                }
            }
        }
    }
    let u = ctx.upsilon(chain, a, y);
    let sign = if l % 2 == 0 { -1.0 } else { 1.0 };
    total * (sign * u * u)
}

/// Terms with two contractions kept in the degree-0 output, by order `L`.
pub const PAIR_TERMS_L2: &[&[Factor]] = &[&[Factor::W02, Factor::W20]];
pub const PAIR_TERMS_L3: &[&[Factor]] = &[
    &[Factor::W01, Factor::W11, Factor::W10],
    &[Factor::W02, Factor::W10, Factor::W10],
    &[Factor::W01, Factor::W01, Factor::W20],
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_counts() {
        use Factor::*;
        assert_eq!(matchings(&[W01, W10]).len(), 1);
        assert_eq!(matchings(&[W10, W01]).len(), 0);
        assert_eq!(matchings(&[W02, W20]).len(), 2);
        assert_eq!(matchings(&[W01, W11, W10]).len(), 1);
        assert_eq!(matchings(&[W02, W10, W10]).len(), 2);
        assert_eq!(matchings(&[W01, W01, W20]).len(), 2);
        assert_eq!(matchings(&[W01, W10, W01, W10]).len(), 1);
    }
}
