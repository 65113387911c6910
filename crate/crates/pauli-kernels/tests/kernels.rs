use num_complex::Complex64;
use pauli_kernels::dump::{from_bytes, to_bytes};
use pauli_kernels::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn small_slot() -> PhotonAxes {
    PhotonAxes {
        kmag: Axis::new(vec![0.25, 0.5, 1.0]),
        ktheta: Axis::new(vec![0.0, 1.0, 2.0]),
        kphi: Axis::single(0.0),
        npol: 2,
    }
}

#[test]
fn identity_and_tau3_decompose_to_basis_elements() {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let id = pauli_decompose([[one, zero], [zero, one]]);
    assert_eq!(id, PauliValue::identity());
    let t3 = pauli_decompose([[one, zero], [zero, -one]]);
    assert_eq!(t3, PauliValue::tau(2));
}

#[test]
fn zeeman_value_decomposes_to_pure_vector() {
    let alpha: f64 = 1e-4;
    let k = [0.3, -0.2, 0.5];
    let eps = [0.6, 0.8, 0.0];
    let kxe = [
        k[1] * eps[2] - k[2] * eps[1],
        k[2] * eps[0] - k[0] * eps[2],
        k[0] * eps[1] - k[1] * eps[0],
    ];
    let v = PauliValue::new(c(0.0, 0.0), kxe.map(|x| c(0.0, alpha.sqrt() * x)));
    let back = pauli_decompose(v.to_matrix());
    assert_eq!(back.w0, c(0.0, 0.0));
    for i in 0..3 {
        assert!((back.wvec[i] - c(0.0, alpha.sqrt() * kxe[i])).norm() < 1e-16);
    }
}

#[test]
fn hermitian_matrices_have_real_components() {
    let m = [[c(0.7, 0.0), c(0.2, -0.4)], [c(0.2, 0.4), c(-1.3, 0.0)]];
    let p = pauli_decompose(m);
    assert_eq!(p.w0.im, 0.0);
    assert!(p.wvec.iter().all(|x| x.im.abs() < 1e-16));
}

#[test]
fn already_symmetric_kernel_is_unchanged() {
    let slot = small_slot();
    let k = WickKernel::from_fn(2, 0, XAxes::origin(), vec![slot.clone(), slot], |_, a| {
        PauliValue::real_scalar(a[0].kmag * a[1].kmag + a[0].ktheta + a[1].ktheta)
    })
    .unwrap();
    assert_eq!(symmetrize(&k).unwrap(), k);
}

#[test]
fn two_slot_kernel_depending_on_first_slot_averages() {
    let slot = small_slot();
    let g = |a: &PhotonArg| a.kmag.powi(2) + 0.1 * a.ktheta;
    let k = WickKernel::from_fn(2, 0, XAxes::origin(), vec![slot.clone(), slot], |_, a| {
        PauliValue::real_scalar(g(&a[0]))
    })
    .unwrap();
    let s = symmetrize(&k).unwrap();
    let mut args = Vec::new();
    let dims = s.dims();
    let mut idx = vec![0; dims.len()];
    for flat in 0..s.values.len() {
        pauli_kernels::grid::unravel(flat, &dims, &mut idx);
        s.node_args(&idx, &mut args);
        let want = 0.5 * (g(&args[0]) + g(&args[1]));
        assert!((s.values[flat].w0.re - want).abs() < 1e-15);
    }
}

#[test]
fn symmetrize_matches_brute_force_permutation_average() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let slot = small_slot();
    let mut k = WickKernel::zeros(2, 1, XAxes::origin(), vec![slot.clone(), slot.clone(), slot]).unwrap();
    for v in k.values.iter_mut() {
        *v = PauliValue::new(
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            [c(rng.random_range(-1.0..1.0), 0.0), c(0.0, rng.random_range(-1.0..1.0)), c(0.3, 0.0)],
        );
    }
    let s = symmetrize(&k).unwrap();
    let dims = k.dims();
    let mut idx = vec![0; dims.len()];
    for flat in 0..k.values.len() {
        pauli_kernels::grid::unravel(flat, &dims, &mut idx);
        let mut swapped = idx.clone();
        swapped[3..7].copy_from_slice(&idx[7..11]);
        swapped[7..11].copy_from_slice(&idx[3..7]);
        let want = (k.get(&idx) + k.get(&swapped)) * 0.5;
        assert!(s.values[flat].max_abs_diff(&want) < 1e-15);
    }
    assert_eq!(symmetrize(&s).unwrap(), s);
}

#[test]
fn zero_kernel_has_zero_norm_in_every_flavor() {
    let x = XAxes::sized(4, 3, 3);
    let k = WickKernel::zeros(0, 1, x, vec![PhotonAxes::standard(4, 3, 2)]).unwrap();
    for f in [NormFlavor::Plain, NormFlavor::Flat, NormFlavor::Sharp] {
        assert_eq!(kernel_norm(&k, f).unwrap(), 0.0);
    }
}

#[test]
fn constant_degree_one_kernel_plain_norm() {
    let cval = -0.37;
    let k = WickKernel::from_fn(0, 1, XAxes::sized(4, 3, 3), vec![PhotonAxes::standard(4, 3, 2)], |_, _| {
        PauliValue::real_scalar(cval)
    })
    .unwrap();
    let want = slot_weight() * 2f64.sqrt() * cval.abs();
    assert!((kernel_norm(&k, NormFlavor::Plain).unwrap() - want).abs() < 1e-14);
    // constants have no derivatives
    assert!((kernel_norm(&k, NormFlavor::Flat).unwrap() - want).abs() < 1e-13);
}

#[test]
fn seed_w11_norm_attains_polarization_bound() {
    let alpha = 1e-4;
    let model = PolarizationModel::Transverse;
    let slot = PhotonAxes {
        kmag: Axis::new(vec![0.5, 1.0]),
        ktheta: Axis::uniform(0.0, std::f64::consts::PI, 8),
        kphi: Axis::new(vec![0.0, 1.0]),
        npol: 2,
    };
    let k = WickKernel::from_fn(1, 1, XAxes::origin(), vec![slot.clone(), slot], |_, a| {
        let (e1, e2) = (a[0].polarization(model), a[1].polarization(model));
        PauliValue::real_scalar(2.0 * alpha * (e1[0] * e2[0] + e1[1] * e2[1] + e1[2] * e2[2]))
    })
    .unwrap();
    // exhaustive scan of |ε·ε'| over the grid
    let scan = k.values.iter().map(|v| v.w0.re.abs() / (2.0 * alpha)).fold(0.0, f64::max);
    assert!((scan - 1.0).abs() < 1e-14);
    let want = slot_weight().powi(2) * 2f64.sqrt() * 2.0 * alpha;
    assert!((kernel_norm(&k, NormFlavor::Plain).unwrap() - want).abs() < 1e-16);
}

#[test]
fn xi_norm_weights_by_degree() {
    let x = XAxes::sized(3, 3, 3);
    let k1 = WickKernel::from_fn(0, 1, x.clone(), vec![PhotonAxes::standard(3, 3, 2)], |_, _| {
        PauliValue::real_scalar(0.2)
    })
    .unwrap();
    let k2 = WickKernel::from_fn(0, 2, x, vec![PhotonAxes::standard(3, 3, 2); 2], |_, _| {
        PauliValue::real_scalar(0.05)
    })
    .unwrap();
    let v1 = kernel_norm(&k1, NormFlavor::Plain).unwrap();
    let v2 = kernel_norm(&k2, NormFlavor::Plain).unwrap();
    let s1 = sequence_norm_xi(&[&k1], 0.1, NormFlavor::Plain).unwrap();
    assert!((s1 - 10.0 * v1).abs() < 1e-12);
    let s12 = sequence_norm_xi(&[&k1, &k2], 0.1, NormFlavor::Plain).unwrap();
    assert!((s12 - (10.0 * v1 + 100.0 * v2)).abs() < 1e-10);
    let z = WickKernel::zeros(0, 1, XAxes::origin(), vec![PhotonAxes::standard(3, 3, 2)]).unwrap();
    assert_eq!(sequence_norm_xi(&[&z], 0.1, NormFlavor::Plain).unwrap(), 0.0);
    assert!(matches!(
        sequence_norm_xi(&[&k1], 1.5, NormFlavor::Plain),
        Err(KernelError::XiOutOfRange(_))
    ));
}

#[test]
fn eval_on_nodes_returns_samples_and_linear_midpoints_are_exact() {
    let x = XAxes::sized(5, 3, 3);
    let k = WickKernel::from_fn(0, 0, x, vec![], |p, _| PauliValue::real_scalar(p.x0)).unwrap();
    let on = eval_kernel(&k, &SpectralPoint::from_reduced(0.5, 0.0, 0.0), &[]).unwrap();
    assert_eq!(on.w0.re, 0.5);
    let mid = eval_kernel(&k, &SpectralPoint::from_reduced(0.375, 0.0, 0.0), &[]).unwrap();
    assert!((mid.w0.re - 0.375).abs() < 1e-15);
    assert!(matches!(
        eval_kernel(&k, &SpectralPoint::from_reduced(1.5, 0.0, 0.0), &[]),
        Err(KernelError::OutOfHull { .. })
    ));
}

#[test]
fn off_node_interpolation_converges_quadratically() {
    let f = |x0: f64, kk: f64| (1.3 * x0).sin() * (0.7 * kk).exp();
    let err = |n: usize| {
        let x = XAxes {
            x0: Axis::uniform(0.0, 1.0, n),
            xpar: Axis::single(0.0),
            xperp: Axis::single(0.0),
        };
        let slot = PhotonAxes {
            kmag: Axis::uniform(0.1, 1.0, n),
            ktheta: Axis::single(0.0),
            kphi: Axis::single(0.0),
            npol: 1,
        };
        let k = WickKernel::from_fn(0, 1, x, vec![slot], |p, a| PauliValue::real_scalar(f(p.x0, a[0].kmag))).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut e = 0.0f64;
        for _ in 0..200 {
            let (x0, kk) = (rng.random_range(0.0..1.0), rng.random_range(0.1..1.0));
            let arg = PhotonArg::new(kk, 0.0, 0.0, Polarization::Plus);
            let v = eval_kernel(&k, &SpectralPoint::from_reduced(x0, 0.0, 0.0), &[arg]).unwrap();
            e = e.max((v.w0.re - f(x0, kk)).abs());
        }
        e
    };
    let (e1, e2) = (err(9), err(17));
    let order = (e1 / e2).log2();
    assert!(order > 1.7, "observed order {order}");
}

#[test]
fn adjoint_partner_pairs_and_round_trips() {
    let slot = small_slot();
    let k = WickKernel::from_fn(0, 1, XAxes::sized(3, 3, 3), vec![slot], |p, a| {
        PauliValue::new(c(p.x0, a[0].kmag), [c(0.0, a[0].ktheta), c(p.xpar, 0.0), c(0.0, 0.0)])
    })
    .unwrap();
    let partner = k.adjoint_partner();
    assert_eq!((partner.m, partner.n), (1, 0));
    assert_eq!(partner.pairing_defect(&k).unwrap(), 0.0);
    assert_eq!(partner.adjoint_partner(), k);
}

#[test]
fn dump_round_trip_is_bit_exact() {
    let slot = small_slot();
    let mut k = WickKernel::from_fn(1, 1, XAxes::sized(2, 3, 2), vec![slot.clone(), slot], |p, a| {
        PauliValue::new(c(p.x0 + a[0].kmag, 1e-300), [c(a[1].ktheta, -0.5), c(0.0, 0.0), c(1.0 / 3.0, 0.0)])
    })
    .unwrap();
    k.zero_limit.push(ZeroLimit {
        slot: 0,
        values: vec![[PauliValue::tau(0), PauliValue::identity(), PauliValue::ZERO]; 3],
    });
    let bytes = to_bytes(&k);
    assert_eq!(from_bytes(&bytes).unwrap(), k);
    assert!(from_bytes(&bytes[..bytes.len() - 3]).is_err());
}
