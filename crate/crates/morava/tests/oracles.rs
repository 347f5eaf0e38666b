//! Brute-force oracles for values that the library computes by linear
//! algebra: exhaustive kernel enumeration and independence of the two Tor
//! code paths.

use morava::{
    cyclic_group_algebra, from_presentation, module_indecomposables, rw_algebra, tor_bar,
    CheckLevel, CoefficientContext, Degree, GradedMap, GradedSpace, LeftModule, PresGenerator,
    Presentation, DEFAULT_TOR_BUDGET,
};

fn ctx(p: u32, n: u32) -> CoefficientContext {
    CoefficientContext::new(p, n).unwrap()
}

/// Multiplication by a on F_3[a]/(a^9): the kernel is spanned by a^8.
/// Oracle: enumerate all 3^9 vectors and count the kernel exactly.
#[test]
fn kernel_of_multiplication_by_a_matches_exhaustive_count() {
    let c = ctx(3, 2);
    let alg = from_presentation(
        c,
        &Presentation {
            generators: vec![PresGenerator {
                name: "a".into(),
                degree_lift: 2,
                truncation: 9,
                rhs: vec![],
            }],
        },
        CheckLevel::Full,
    )
    .unwrap();
    let rank = alg.rank();
    // right multiplication by a as a graded map
    let mut mat = morava::FpMat::zero(rank, rank);
    for s in 0..rank {
        for &(t, coeff) in alg.mul_basis(s, 1) {
            mat.set(t, s, coeff);
        }
    }
    let shift = *alg.space().degree(1);
    let f = GradedMap::new(alg.space().clone(), alg.space().clone(), shift, mat.clone()).unwrap();

    // exhaustive enumeration over F_3^9
    let field = c.field();
    let mut kernel_count = 0u32;
    let mut a8_in_kernel = false;
    for code in 0..3u64.pow(9) {
        let mut v = vec![0u32; 9];
        let mut x = code;
        for slot in v.iter_mut() {
            *slot = (x % 3) as u32;
            x /= 3;
        }
        let image = mat.mul_vec(field, &v);
        if image.iter().all(|&e| e == 0) {
            kernel_count += 1;
            if v == vec![0, 0, 0, 0, 0, 0, 0, 0, 1] {
                a8_in_kernel = true;
            }
        }
    }
    // 3^1 vectors in a rank-1 kernel
    assert_eq!(kernel_count, 3);
    assert!(a8_in_kernel);

    let (ker, incl) = f.kernel();
    assert_eq!(ker.rank(), 1);
    assert_eq!(
        incl.matrix().column(0),
        vec![0, 0, 0, 0, 0, 0, 0, 0, 1]
    );
}

/// Row s = 0 of the bar complex must equal the direct quotient computation;
/// the two code paths share nothing past the augmentation ideal.
#[test]
fn tor_row_zero_equals_module_indecomposables() {
    let cases: Vec<(morava::GradedAlgebra, &str)> = vec![
        (
            rw_algebra(ctx(2, 2), 1, CheckLevel::Full).unwrap().algebra,
            "rw(2,2,1)",
        ),
        (
            rw_algebra(ctx(3, 2), 2, CheckLevel::Full).unwrap().algebra,
            "rw(3,2,2)",
        ),
        (
            rw_algebra(ctx(2, 3), 1, CheckLevel::Full).unwrap().algebra,
            "rw(2,3,1)",
        ),
        (
            cyclic_group_algebra(ctx(3, 1), 4, CheckLevel::Full).unwrap(),
            "R[Z/4]",
        ),
        (
            cyclic_group_algebra(ctx(5, 1), 5, CheckLevel::Full).unwrap(),
            "R[Z/5]",
        ),
    ];
    for (alg, name) in &cases {
        for module in [LeftModule::dual_of(alg), LeftModule::regular(alg)] {
            let (q, _) = module_indecomposables(alg, &module).unwrap();
            let table = tor_bar(alg, &module, 1, DEFAULT_TOR_BUDGET).unwrap();
            assert_eq!(table.rank(0), Some(q.rank()), "{name}");
            let mut expect = q.degree_multiset();
            expect.sort_unstable();
            assert_eq!(table.rows[0].degrees, expect, "{name}");
        }
    }
}

/// The trivial module over R[Z/p] at the same p has periodic Tor of rank 1
/// in every homological degree (the group algebra is F_p[x]/(x^p) in
/// disguise).
#[test]
fn trivial_module_over_zp_is_periodic() {
    for p in [2u32, 3, 5] {
        let alg = cyclic_group_algebra(ctx(p, 1), p as usize, CheckLevel::Full).unwrap();
        let triv = LeftModule::trivial(&alg).unwrap();
        let table = tor_bar(&alg, &triv, 2, DEFAULT_TOR_BUDGET).unwrap();
        for s in 0..=2 {
            assert_eq!(table.rank(s), Some(1), "p = {p}, s = {s}");
        }
    }
}

/// make_space oracle examples with hand-reduced degrees.
#[test]
fn space_degree_residues() {
    let c = ctx(2, 2);
    let degrees: Vec<u32> = (0..4)
        .map(|m| Degree::from_lift(&c, 4 * m).residue())
        .collect();
    assert_eq!(degrees, vec![0, 4, 2, 0]);

    let sp = GradedSpace::new(
        c,
        (0..4)
            .map(|m| (format!("a^{m}"), Degree::from_lift(&c, 4 * m)))
            .collect(),
    )
    .unwrap();
    let dual_degrees = sp.dual().degree_multiset();
    assert_eq!(dual_degrees, vec![0, 0, 2, 4]);
}
