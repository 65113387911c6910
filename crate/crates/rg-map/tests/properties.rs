use pauli_kernels::{Axis, PauliValue, PhotonAxes, WickKernel, XAxes};
use proptest::prelude::*;
use rg_map::{rescale, rescale_prefactor, Cheb};

fn kernel(vals: Vec<f64>) -> WickKernel {
    let slot = PhotonAxes {
        kmag: Axis::new(vec![0.0, 0.5, 1.0]),
        ktheta: Axis::single(0.0),
        kphi: Axis::single(0.0),
        npol: 1,
    };
    let x = XAxes {
        x0: Axis::new(vec![0.0, 1.0]),
        xpar: Axis::single(0.0),
        xperp: Axis::single(0.0),
    };
    let mut k = WickKernel::zeros(0, 1, x, vec![slot]).unwrap();
    k.values = vals.into_iter().map(|v| PauliValue::scalar(v.into())).collect();
    k
}

proptest! {
    #[test]
    fn rescale_is_linear(a in proptest::collection::vec(-1.0f64..1.0, 6), b in proptest::collection::vec(-1.0f64..1.0, 6), s in -3.0f64..3.0) {
        let (ka, kb) = (kernel(a), kernel(b));
        let sum = ka.combine(s, &kb, 1.0).unwrap();
        let lhs = rescale(&sum, 0.1, 1.1, 0.5).unwrap();
        let rhs = rescale(&ka, 0.1, 1.1, 0.5).unwrap().combine(s, &rescale(&kb, 0.1, 1.1, 0.5).unwrap(), 1.0).unwrap();
        for (l, r) in lhs.values.iter().zip(&rhs.values) {
            prop_assert!((*l - *r).frobenius() < 1e-12);
        }
    }

    #[test]
    fn prefactor_jumps_at_sigma_one(d in 1usize..5, rho in 0.001f64..0.25, alpha in 0.5f64..1.5) {
        let lo = rescale_prefactor(d, rho, alpha, 1.0);
        let hi = rescale_prefactor(d, rho, alpha, 1.0 + 1e-9);
        prop_assert!((hi / lo - rho.powi(d as i32)).abs() < 1e-12 * rho.powi(d as i32));
    }

    #[test]
    fn chebyshev_reproduces_cubics(c in proptest::array::uniform4(-2.0f64..2.0), a in -1.0f64..0.0, w in 0.01f64..1.0) {
        let f = |x: f64| c[0] + c[1] * x + c[2] * x * x + c[3] * x * x * x;
        let ch = Cheb::from_fn(a, a + w, 9, f);
        for i in 0..=10 {
            let x = a + w * i as f64 / 10.0;
            prop_assert!((ch.eval(x) - f(x)).abs() < 1e-12);
        }
    }
}
