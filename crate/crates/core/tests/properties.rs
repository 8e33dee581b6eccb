use std::sync::Arc;

use modisom::algebra::{FiniteAlgebra, GroupAlgebra};
use modisom::families::{build, Family};
use modisom::invariants::{compare, fingerprint, Caps, KernelSizer, DEFAULT_KERNEL_CAP};
use modisom::jennings::{dimension_subgroups_algebra_side, jennings_basis};
use modisom::pgroup::Group;
use proptest::prelude::*;

fn small_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Dihedral { order: 8 }),
        Just(Family::Quaternion { order: 8 }),
        Just(Family::Abelian {
            p: 2,
            exponents: vec![2, 1]
        }),
        Just(Family::Dihedral { order: 16 }),
        Just(Family::Semidihedral { order: 16 }),
        Just(Family::Quaternion { order: 16 }),
        Just(Family::Heisenberg { p: 3 }),
        Just(Family::Cyclic { p: 3, log_order: 2 }),
    ]
}

/// The same group with elements other than the identity permuted.
fn relabel(g: &Group, perm: &[u32]) -> Group {
    let n = g.order();
    let sigma = |x: u32| if x == 0 { 0 } else { perm[x as usize - 1] };
    let mut table = vec![0; n * n];
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            table[sigma(x) as usize * n + sigma(y) as usize] = sigma(g.mul(x, y));
        }
    }
    Group::from_table(g.p(), table).unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((1..n as u32).collect::<Vec<_>>()).prop_shuffle()
}

fn family_and_perm() -> impl Strategy<Value = (Family, Vec<u32>)> {
    small_family().prop_flat_map(|f| {
        let n = build(&f).unwrap().order();
        (Just(f), permutation(n))
    })
}

fn coefficients(p: u32, n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..p as i64, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fingerprint_is_invariant_under_relabelling((fam, perm) in family_and_perm()) {
        let g = build(&fam).unwrap();
        let h = relabel(&g, &perm);
        let a = fingerprint(&GroupAlgebra::new(g), Caps::default()).unwrap();
        let b = fingerprint(&GroupAlgebra::new(h), Caps::default()).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn comparison_is_symmetric(f in small_family(), g in small_family()) {
        let a = GroupAlgebra::new(build(&f).unwrap());
        let b = GroupAlgebra::new(build(&g).unwrap());
        match (compare(&a, &b, Caps::default()), compare(&b, &a, Caps::default())) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y.swapped()),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "only one direction failed"),
        }
    }

    #[test]
    fn algebra_is_associative_and_distributive(
        x in coefficients(2, 16), y in coefficients(2, 16), z in coefficients(2, 16)
    ) {
        let alg = GroupAlgebra::new(build(&Family::Semidihedral { order: 16 }).unwrap());
        let v = |c: &[i64]| fplinalg::FpVector::from_entries(2, c).unwrap();
        let (x, y, z) = (v(&x), v(&y), v(&z));
        let m = |a: &fplinalg::FpVector, b: &fplinalg::FpVector| alg.mul_vectors(a, b);
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        let yz = y.add(&z).unwrap();
        prop_assert_eq!(m(&x, &yz), m(&x, &y).add(&m(&x, &z)).unwrap());
    }

    #[test]
    fn normalized_elements_are_units(mut c in coefficients(3, 9)) {
        let alg = GroupAlgebra::new(build(&Family::Heisenberg { p: 3 }).unwrap());
        // force augmentation 1
        let s: i64 = c.iter().sum();
        c[0] = (c[0] - s + 1).rem_euclid(3);
        let mut full = vec![0; 27];
        full[..9].copy_from_slice(&c);
        let x = fplinalg::FpVector::from_entries(3, &full).unwrap();
        let inv = alg.inverse_vector(&x).unwrap();
        prop_assert_eq!(alg.mul_vectors(&x, &inv), alg.one_vector());
        prop_assert_eq!(alg.mul_vectors(&inv, &x), alg.one_vector());
    }

    #[test]
    fn dimension_subgroups_agree_after_relabelling((fam, perm) in family_and_perm()) {
        let g = relabel(&build(&fam).unwrap(), &perm);
        let alg = GroupAlgebra::new(Arc::new(g));
        let a = alg.group().dimension_subgroups().unwrap();
        let b = dimension_subgroups_algebra_side(&alg).unwrap();
        prop_assert_eq!(a.terms(), b.terms());
    }

    #[test]
    fn kernel_sizes_by_table_and_by_powering(fam in small_family(), i in 1usize..4, s in 1u32..3) {
        let alg = GroupAlgebra::new(build(&fam).unwrap());
        let jd = jennings_basis(&alg).unwrap();
        let mut k = KernelSizer::new(&alg, &jd, DEFAULT_KERNEL_CAP);
        prop_assert_eq!(k.kernel_size(i, s).unwrap(), k.kernel_size_dense(i, s).unwrap());
    }
}
