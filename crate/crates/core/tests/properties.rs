use klein_jacobian::genus1::{
    abel_jacobi, classify_fixed_class, invariant_representative, linearly_equivalent, sigma_divisor,
    translation_class_x, ClassLabel, Divisor, ModelPoint,
};
use klein_jacobian::homology::{check_inv_condition, HomologyAction};
use klein_jacobian::lambda::lambda_of_model_class;
use klein_jacobian::torus::{
    brute_force_fixed_scan, component_of, fixed_components, involution_xy, is_fixed_point,
    ImagPartMatrix, RealPartMatrix, ScanParams, TorusPointXY, required_lattice_bound,
};
use klein_jacobian::{IntegerMatrix, Parity};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn symmetric_re2(g: usize) -> impl Strategy<Value = RealPartMatrix> {
    prop::collection::vec(-4i64..=4, g * g).prop_map(move |v| {
        let m = IntegerMatrix::from_fn(g, g, |i, j| BigInt::from(v[i.min(j) * g + i.max(j)]));
        RealPartMatrix::from_doubled(g, Parity::of(g), m).unwrap()
    })
}

fn rp_and_point() -> impl Strategy<Value = (RealPartMatrix, TorusPointXY)> {
    (1usize..=4).prop_flat_map(|g| {
        let coord = (-12i64..12, 1i64..=12);
        (
            symmetric_re2(g),
            prop::collection::vec(coord.clone(), g),
            prop::collection::vec(coord, g),
        )
            .prop_map(|(rp, x, y)| (rp, TorusPointXY::from_ratios(&x, &y)))
    })
}

fn model_point() -> impl Strategy<Value = ModelPoint> {
    ((0i64..24, 1i64..=12), (0i64..24, 1i64..=12)).prop_map(|(x, y)| ModelPoint::from_ratios(x, y))
}

fn divisor() -> impl Strategy<Value = Divisor> {
    prop::collection::vec((model_point(), -3i64..=3), 0..5).prop_map(Divisor::from_terms)
}

fn degree_zero_divisor() -> impl Strategy<Value = Divisor> {
    (divisor(), model_point()).prop_map(|(d, p)| {
        let deg = d.degree();
        &d - &Divisor::from_terms([(p, deg)])
    })
}

/// `(p) + (q) - (p + q) - (O)` is principal on the curve.
fn principal() -> impl Strategy<Value = Divisor> {
    (model_point(), model_point()).prop_map(|(p, q)| {
        Divisor::from_terms([(p, 1), (q, 1), (p + q, -1), (ModelPoint::origin(), -1)])
    })
}

proptest! {
    #[test]
    fn involution_squares_to_identity((rp, p) in rp_and_point()) {
        let once = involution_xy(&rp, &p).unwrap();
        prop_assert_eq!(involution_xy(&rp, &once).unwrap(), p);
    }

    #[test]
    fn fixed_set_is_union_of_offset_tori((rp, p) in rp_and_point()) {
        let locus = fixed_components(&rp);
        let on_offset = locus.component_offsets.iter().any(|o| o.as_slice() == p.y());
        prop_assert_eq!(is_fixed_point(&rp, &p), on_offset);
        prop_assert_eq!(component_of(&rp, &p).is_some(), on_offset);
        prop_assert!(locus.count().is_power_of_two());
        prop_assert!(locus.component_offsets[0].iter().all(Zero::is_zero));
    }

    #[test]
    fn every_half_offset_torus_is_classified((rp, p) in rp_and_point()) {
        // move p onto each half-integral y; fixed exactly when the offset is listed
        let g = rp.genus();
        let locus = fixed_components(&rp);
        for mask in 0..1u32 << g {
            let y: Vec<(i64, i64)> = (0..g).map(|i| ((mask >> i & 1) as i64, 2)).collect();
            let x: Vec<(i64, i64)> = p.x().iter().map(|r| (r.numer().try_into().unwrap(), r.denom().try_into().unwrap())).collect();
            let q = TorusPointXY::from_ratios(&x, &y);
            let listed = locus.component_offsets.iter().any(|o| o.as_slice() == q.y());
            prop_assert_eq!(is_fixed_point(&rp, &q), listed);
        }
    }

    #[test]
    fn component_is_lattice_invariant(
        (rp, p) in rp_and_point(),
        shift in prop::collection::vec((-3i64..=3, -3i64..=3), 4),
    ) {
        let g = rp.genus();
        let n: Vec<i64> = shift.iter().take(g).map(|s| s.0).collect();
        let m: Vec<i64> = shift.iter().take(g).map(|s| s.1).collect();
        prop_assert_eq!(component_of(&rp, &p), component_of(&rp, &p.translate(&n, &m)));
    }

    #[test]
    fn oracle_scan_agrees_on_random_real_parts(rp in (1usize..=2).prop_flat_map(symmetric_re2)) {
        let g = rp.genus();
        let params = ScanParams { grid: 4, lattice_bound: required_lattice_bound(&rp), tol: 1e-9 };
        let res = brute_force_fixed_scan(&rp, &ImagPartMatrix::identity(g), params).unwrap();
        prop_assert_eq!(res.count, fixed_components(&rp).count());
    }

    #[test]
    fn sigma_divisor_is_degree_preserving_involution(d in divisor()) {
        let s = sigma_divisor(&d);
        prop_assert_eq!(s.degree(), d.degree());
        prop_assert_eq!(sigma_divisor(&s), d);
    }

    #[test]
    fn sigma_conjugates_abel_jacobi(d in degree_zero_divisor()) {
        let a = abel_jacobi(&d).unwrap();
        let b = abel_jacobi(&sigma_divisor(&d)).unwrap();
        prop_assert_eq!(b, ModelPoint::new(a.x(), -a.y()));
    }

    #[test]
    fn classification_is_a_class_function(d in degree_zero_divisor(), f in principal()) {
        let e = &d + &f;
        prop_assert!(linearly_equivalent(&d, &e));
        prop_assert_eq!(classify_fixed_class(&d), classify_fixed_class(&e));
    }

    #[test]
    fn abel_jacobi_is_additive(d in degree_zero_divisor(), e in degree_zero_divisor()) {
        let sum = abel_jacobi(&(&d + &e)).unwrap();
        prop_assert_eq!(sum, abel_jacobi(&d).unwrap() + abel_jacobi(&e).unwrap());
    }

    #[test]
    fn invariant_representative_exactly_on_t1(d in degree_zero_divisor()) {
        match classify_fixed_class(&d) {
            ClassLabel::T1 => {
                let e = invariant_representative(&d).unwrap().unwrap();
                prop_assert_eq!(sigma_divisor(&e), e.clone());
                prop_assert!(linearly_equivalent(&d, &e));
            }
            ClassLabel::T2 => prop_assert_eq!(invariant_representative(&d).unwrap(), None),
            _ => prop_assert!(invariant_representative(&d).is_err()),
        }
    }

    #[test]
    fn translation_swaps_cosets(d in degree_zero_divisor()) {
        let moved = classify_fixed_class(&(&d + &translation_class_x()));
        let expected = match classify_fixed_class(&d) {
            ClassLabel::T1 => ClassLabel::T2,
            ClassLabel::T2 => ClassLabel::T1,
            other => other,
        };
        prop_assert_eq!(moved, expected);
    }

    #[test]
    fn lambda_is_multiplicative(d in degree_zero_divisor(), e in degree_zero_divisor()) {
        if let (Ok(a), Ok(b)) = (lambda_of_model_class(&d), lambda_of_model_class(&e)) {
            prop_assert_eq!(lambda_of_model_class(&(&d + &e)).unwrap(), a * b);
        }
    }
}

#[test]
fn transformed_action_is_an_involution_for_each_returned_a() {
    for g in 1..=12 {
        let h = HomologyAction::for_genus(g).unwrap();
        let a = check_inv_condition(&h.transformed).unwrap();
        let block = IntegerMatrix::from_blocks(&[
            vec![IntegerMatrix::identity(g), a],
            vec![IntegerMatrix::zeros(g, g), -&IntegerMatrix::identity(g)],
        ])
        .unwrap();
        assert_eq!(&block * &block, IntegerMatrix::identity(2 * g));
    }
}

#[test]
fn genus_one_model_matches_torus_components() {
    use klein_jacobian::genus1::torsion_points;
    use klein_jacobian::torus::canonical_real_part;

    let rp = canonical_real_part(1, Parity::Odd).unwrap();
    for p in torsion_points(6) {
        for q in torsion_points(6) {
            let d = Divisor::from_terms([(p, 1), (q, -1)]);
            let a = abel_jacobi(&d).unwrap();
            let expected = match classify_fixed_class(&d) {
                ClassLabel::T1 => Some(0),
                ClassLabel::T2 => Some(1),
                _ => None,
            };
            assert_eq!(component_of(&rp, &a.to_torus()), expected, "{d}");
        }
    }
}
