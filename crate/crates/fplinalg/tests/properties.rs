use fplinalg::{rank, EchelonSubspace, FpVector};
use proptest::prelude::*;

fn vectors(p: u32, len: usize, count: usize) -> impl Strategy<Value = Vec<FpVector>> {
    prop::collection::vec(prop::collection::vec(0..p as i64, len), count).prop_map(move |rows| {
        rows.iter()
            .map(|r| FpVector::from_entries(p, r).unwrap())
            .collect()
    })
}

fn span(p: u32, len: usize, vs: &[FpVector]) -> EchelonSubspace {
    EchelonSubspace::echelonize(p, len, vs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_dimension_identity_f2(a in vectors(2, 50, 20), b in vectors(2, 50, 20)) {
        let (a, b) = (span(2, 50, &a), span(2, 50, &b));
        let s = a.sum(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
        prop_assert!(a.is_subspace_of(&s).unwrap() && b.is_subspace_of(&s).unwrap());
    }

    #[test]
    fn modular_dimension_identity_f5(a in vectors(5, 12, 6), b in vectors(5, 12, 7)) {
        let (a, b) = (span(5, 12, &a), span(5, 12, &b));
        let s = a.sum(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
    }

    #[test]
    fn echelonize_is_a_closure_operator(a in vectors(3, 9, 5), extra in vectors(3, 9, 2)) {
        let s = span(3, 9, &a);
        // idempotent
        prop_assert_eq!(&span(3, 9, s.rows()), &s);
        // extensive
        for v in &a {
            prop_assert!(s.contains(v).unwrap());
        }
        // monotone
        let mut bigger = a.clone();
        bigger.extend(extra);
        prop_assert!(s.is_subspace_of(&span(3, 9, &bigger)).unwrap());
        prop_assert_eq!(rank(3, 9, &a).unwrap(), s.dim());
    }

    #[test]
    fn membership_matches_exhaustive_enumeration(
        a in vectors(2, 14, 8),
        probe in prop::collection::vec(0..2i64, 14),
    ) {
        let s = span(2, 14, &a);
        let v = FpVector::from_entries(2, &probe).unwrap();
        let exhaustive = s.elements().any(|w| w == v);
        prop_assert_eq!(s.contains(&v).unwrap(), exhaustive);
        prop_assert_eq!(s.reduce(&v).unwrap().is_zero(), exhaustive);
    }

    #[test]
    fn membership_matches_exhaustive_enumeration_f3(
        a in vectors(3, 7, 4),
        probe in prop::collection::vec(0..3i64, 7),
    ) {
        let s = span(3, 7, &a);
        let v = FpVector::from_entries(3, &probe).unwrap();
        let exhaustive = s.elements().any(|w| w == v);
        prop_assert_eq!(s.contains(&v).unwrap(), exhaustive);
    }
}

#[test]
fn full_rank_512_over_f2() {
    // Upper unitriangular: rank is full.
    let n = 512;
    let rows: Vec<FpVector> = (0..n)
        .map(|i| {
            let mut v = FpVector::zeros(2, n).unwrap();
            for j in i..n {
                if (i * 7 + j * 3) % 5 == 0 || j == i {
                    v.set(j, 1);
                }
            }
            v
        })
        .collect();
    assert_eq!(rank(2, n, &rows).unwrap(), n);
}
