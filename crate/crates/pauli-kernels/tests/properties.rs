use num_complex::Complex64;
use pauli_kernels::*;
use proptest::prelude::*;

fn complex() -> impl Strategy<Value = Complex64> {
    (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(a, b)| Complex64::new(a, b))
}

fn pauli() -> impl Strategy<Value = PauliValue> {
    (complex(), complex(), complex(), complex()).prop_map(|(a, b, c, d)| PauliValue::new(a, [b, c, d]))
}

fn kernel(values: Vec<PauliValue>) -> WickKernel {
    let slot = PhotonAxes {
        kmag: Axis::new(vec![0.2, 0.6, 1.0]),
        ktheta: Axis::single(0.0),
        kphi: Axis::single(0.0),
        npol: 1,
    };
    let x = XAxes {
        x0: Axis::new(vec![0.0, 0.5, 1.0]),
        xpar: Axis::new(vec![-0.5, 0.0, 0.5]),
        xperp: Axis::single(0.0),
    };
    let mut k = WickKernel::zeros(0, 1, x, vec![slot]).unwrap();
    k.values = values;
    k
}

const FLAVORS: [NormFlavor; 3] = [NormFlavor::Plain, NormFlavor::Flat, NormFlavor::Sharp];

proptest! {
    #[test]
    fn decomposition_reconstructs_matrix(m in proptest::array::uniform2(proptest::array::uniform2(complex()))) {
        let back = pauli_decompose(m).to_matrix();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((back[i][j] - m[i][j]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn frobenius_matches_trace_formula(p in pauli()) {
        let m = p.to_matrix();
        let tr: f64 = m.iter().flatten().map(|z| z.norm_sqr()).sum();
        prop_assert!((p.frobenius() - tr.sqrt()).abs() < 1e-12 * (1.0 + tr.sqrt()));
    }

    #[test]
    fn norms_are_homogeneous(vals in proptest::collection::vec(pauli(), 27), c in -5.0f64..5.0) {
        let k = kernel(vals);
        let ck = k.map(|v| v * c);
        for f in FLAVORS {
            let (a, b) = (kernel_norm(&ck, f).unwrap(), kernel_norm(&k, f).unwrap());
            prop_assert!((a - c.abs() * b).abs() <= 1e-12 * (1.0 + a));
        }
    }

    #[test]
    fn norms_are_subadditive(v1 in proptest::collection::vec(pauli(), 27), v2 in proptest::collection::vec(pauli(), 27)) {
        let (k1, k2) = (kernel(v1), kernel(v2));
        let sum = k1.combine(1.0, &k2, 1.0).unwrap();
        for f in FLAVORS {
            let lhs = kernel_norm(&sum, f).unwrap();
            let rhs = kernel_norm(&k1, f).unwrap() + kernel_norm(&k2, f).unwrap();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }
    }

    #[test]
    fn symmetrize_is_idempotent(vals in proptest::collection::vec(pauli(), 16)) {
        let slot = PhotonAxes {
            kmag: Axis::new(vec![0.5, 1.0]),
            ktheta: Axis::new(vec![0.0, 1.0]),
            kphi: Axis::single(0.0),
            npol: 1,
        };
        let mut k = WickKernel::zeros(0, 2, XAxes::origin(), vec![slot.clone(), slot]).unwrap();
        k.values = vals;
        let s = symmetrize(&k).unwrap();
        prop_assert_eq!(symmetrize(&s).unwrap(), s);
    }
}
