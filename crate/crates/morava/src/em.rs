//! The Eilenberg-MacLane families: rho(I) combinatorics, the
//! Ravenel-Wilson truncated-polynomial presentations of K(n)_* K(Z/p, q),
//! the primitive generator pi, the K(n)-degree, and the bordism-class value
//! epsilon(pi).

use crate::algebra::{
    augmentation_ideal, cyclic_group_algebra, from_presentation, left_annihilator, CheckLevel,
    GradedAlgebra, PresGenerator, Presentation,
};
use crate::error::{Error, Result};
use crate::fp::{sparse, SparseVec};
use crate::graded::{CoefficientContext, Degree};
use crate::hopf::{frobenius_certificate, FrobeniusCertificate};
use crate::tor::{tor_bar, TorTable, DEFAULT_TOR_BUDGET};

/// A strictly increasing sequence 0 < i_1 < ... < i_q < n indexing a
/// Ravenel-Wilson generator a_I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSequence(Vec<u32>);

impl IndexSequence {
    pub fn new(indices: Vec<u32>, n: u32, q: u32) -> Result<Self> {
        let ok = indices.len() == q as usize
            && indices.windows(2).all(|w| w[0] < w[1])
            && indices.first().map_or(q == 0, |&i| i > 0)
            && indices.last().is_none_or(|&i| i < n);
        if !ok {
            return Err(Error::InvalidIndexSequence { n, q });
        }
        Ok(IndexSequence(indices))
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    /// All valid sequences for (n, q), in lexicographic order.
    pub fn all(n: u32, q: u32) -> Vec<IndexSequence> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: u32, n: u32, q: u32, cur: &mut Vec<u32>, out: &mut Vec<IndexSequence>) {
            if cur.len() == q as usize {
                out.push(IndexSequence(cur.clone()));
                return;
            }
            for i in start..n {
                cur.push(i);
                rec(i + 1, n, q, cur, out);
                cur.pop();
            }
        }
        rec(1, n, q, &mut cur, &mut out);
        out
    }
}

/// rho(I) = s + 1 where s in {0, ..., q} is maximal with
/// (i_{q-s+1}, ..., i_q) = (n-s, ..., n-1).
pub fn rho(seq: &IndexSequence, n: u32, q: u32) -> Result<u32> {
    if seq.indices().len() != q as usize {
        return Err(Error::InvalidIndexSequence { n, q });
    }
    let idx = seq.indices();
    let mut best = 0u32;
    for s in 0..=q {
        let matches = (0..s as usize)
            .all(|t| idx[q as usize - s as usize + t] == n - s + t as u32);
        if matches {
            best = s;
        }
    }
    Ok(best + 1)
}

/// Which family a constructed algebra belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmFamily {
    /// q = 0: the group algebra R[Z/p].
    Group,
    /// 0 < q < n: tensor product of truncated polynomial algebras.
    Truncated,
    /// q = n: one generator with a^p = (-1)^{n+1} a after v_n -> 1.
    TopCase,
    /// q > n: the unit algebra.
    Point,
}

#[derive(Debug, Clone)]
pub struct EmGenerator {
    pub indices: Vec<u32>,
    pub name: String,
    pub degree_lift: i64,
    pub truncation: u32,
    pub rho: u32,
}

/// K(n)_* K(Z/p, q) as a graded algebra plus construction metadata.
#[derive(Debug, Clone)]
pub struct EMAlgebra {
    pub algebra: GradedAlgebra,
    pub p: u32,
    pub n: u32,
    pub q: u32,
    pub family: EmFamily,
    pub generators: Vec<EmGenerator>,
}

fn generator_name(indices: &[u32]) -> String {
    let inner: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
    format!("a_({})", inner.join(","))
}

/// Build K(n)_* K(Z/p, q). For 0 < q < n this is
/// (x)_I  R[a_I] / (a_I^{p^{rho(I)}}); for q = n it is
/// R[a] / (a^p - (-1)^{n+1} a); q = 0 gives R[Z/p] and q > n the unit
/// algebra.
pub fn rw_algebra(ctx: CoefficientContext, q: u32, level: CheckLevel) -> Result<EMAlgebra> {
    let p = ctx.p();
    let n = ctx.n();
    if q == 0 {
        let algebra = cyclic_group_algebra(ctx, p as usize, level)?;
        return Ok(EMAlgebra {
            algebra,
            p,
            n,
            q,
            family: EmFamily::Group,
            generators: vec![],
        });
    }
    if q > n {
        return Ok(EMAlgebra {
            algebra: GradedAlgebra::unit_algebra(ctx),
            p,
            n,
            q,
            family: EmFamily::Point,
            generators: vec![],
        });
    }
    if q == n {
        // single generator a_I, I = (0, 1, ..., n-1), |a_I| = 2(p^n-1)/(p-1),
        // relation a^p + (-1)^n v_n a = 0, i.e. a^p = (-1)^{n+1} a at v_n = 1
        let indices: Vec<u32> = (0..n).collect();
        let degree_lift: i64 = 2 * ((0..n).map(|i| (p as i64).pow(i)).sum::<i64>());
        // degree consistency of the relation: (p-1)|a| = 2(p^n - 1) = 0 mod L
        debug_assert_eq!(
            (p as i64 - 1) * degree_lift,
            2 * ((p as i64).pow(n) - 1)
        );
        let coeff: i64 = if n.is_multiple_of(2) { -1 } else { 1 };
        let name = generator_name(&indices);
        let pres = Presentation {
            generators: vec![PresGenerator {
                name: name.clone(),
                degree_lift,
                truncation: p,
                rhs: vec![(coeff, 1)],
            }],
        };
        let algebra = from_presentation(ctx, &pres, level)?;
        return Ok(EMAlgebra {
            algebra,
            p,
            n,
            q,
            family: EmFamily::TopCase,
            generators: vec![EmGenerator {
                indices,
                name,
                degree_lift,
                truncation: p,
                rho: 1,
            }],
        });
    }
    // 0 < q < n
    let mut generators = Vec::new();
    let mut pres_gens = Vec::new();
    for seq in IndexSequence::all(n, q) {
        let r = rho(&seq, n, q)?;
        let truncation = (p as u64).pow(r);
        let truncation = u32::try_from(truncation).map_err(|_| Error::DimensionMismatch {
            detail: format!("truncation p^{r} overflows"),
        })?;
        let degree_lift: i64 = 2 * seq
            .indices()
            .iter()
            .map(|&i| (p as i64).pow(i))
            .sum::<i64>();
        let name = generator_name(seq.indices());
        pres_gens.push(PresGenerator {
            name: name.clone(),
            degree_lift,
            truncation,
            rhs: vec![],
        });
        generators.push(EmGenerator {
            indices: seq.indices().to_vec(),
            name,
            degree_lift,
            truncation,
            rho: r,
        });
    }
    let algebra = from_presentation(
        ctx,
        &Presentation {
            generators: pres_gens,
        },
        level,
    )?;
    Ok(EMAlgebra {
        algebra,
        p,
        n,
        q,
        family: EmFamily::Truncated,
        generators,
    })
}

impl EMAlgebra {
    /// Expected total rank: p^n for q = 0 or q = 1, prod_I p^{rho(I)} for
    /// 0 < q < n, p for q = n, 1 for q > n.
    pub fn expected_rank(&self) -> u128 {
        match self.family {
            EmFamily::Group => self.p as u128,
            EmFamily::Point => 1,
            EmFamily::TopCase => self.p as u128,
            EmFamily::Truncated => self
                .generators
                .iter()
                .map(|g| g.truncation as u128)
                .product(),
        }
    }

    /// The closed-form primitive generator.
    ///
    /// For 0 < q < n: prod_I a_I^{p^{rho(I)} - 1}. For q = n:
    /// a^{p-1} + (-1)^n (the coefficient of v_n, at v_n -> 1). For q = 0:
    /// the norm element. For q > n: the unit.
    pub fn closed_form_pi(&self) -> SparseVec {
        let a = &self.algebra;
        match self.family {
            EmFamily::Group => (0..a.rank()).map(|i| (i, 1)).collect(),
            EmFamily::Point => a.unit_vec().clone(),
            EmFamily::TopCase => {
                let f = a.ctx().field();
                let monomials = a.monomials().expect("presentation algebra");
                let top = monomials
                    .exponents
                    .iter()
                    .position(|e| e == &vec![self.p - 1])
                    .expect("top monomial exists");
                let unit = monomials
                    .exponents
                    .iter()
                    .position(|e| e == &vec![0])
                    .expect("unit monomial exists");
                let sign = if self.n.is_multiple_of(2) { 1 } else { f.neg(1) };
                let mut v: SparseVec = vec![(unit, sign), (top, 1)];
                v.sort_unstable_by_key(|&(i, _)| i);
                v.retain(|&(_, c)| c != 0);
                v
            }
            EmFamily::Truncated => {
                let monomials = a.monomials().expect("presentation algebra");
                let target: Vec<u32> = self
                    .generators
                    .iter()
                    .map(|g| g.truncation - 1)
                    .collect();
                let idx = monomials
                    .exponents
                    .iter()
                    .position(|e| e == &target)
                    .expect("top monomial exists");
                vec![(idx, 1)]
            }
        }
    }

    /// The integer lift of deg(pi) from the closed form.
    pub fn closed_form_degree_lift(&self) -> i64 {
        match self.family {
            EmFamily::Group | EmFamily::Point => 0,
            EmFamily::TopCase => 2 * ((self.p as i64).pow(self.n) - 1),
            EmFamily::Truncated => self
                .generators
                .iter()
                .map(|g| g.degree_lift * (g.truncation as i64 - 1))
                .sum(),
        }
    }
}

/// The normalized primitive generator: the annihilator of the augmentation
/// ideal must have rank one.
#[derive(Debug, Clone)]
pub struct PrimitiveGenerator {
    pub pi: SparseVec,
    pub degree: Degree,
}

pub fn primitive_generator(a: &GradedAlgebra) -> Result<PrimitiveGenerator> {
    let ideal = augmentation_ideal(a)?;
    let (ann, incl) = left_annihilator(a, &ideal);
    if ann.rank() != 1 {
        return Err(Error::AnnihilatorRank { rank: ann.rank() });
    }
    let pi = a.normalize_leading(&sparse::from_dense(&incl.matrix().column(0)));
    let degree = a
        .homogeneous_degree(&pi)
        .expect("annihilator basis is homogeneous");
    Ok(PrimitiveGenerator { pi, degree })
}

/// Primitive generator for an EM algebra, cross-checked against the closed
/// form (they must agree exactly after normalization).
pub fn primitive_generator_em(em: &EMAlgebra) -> Result<PrimitiveGenerator> {
    let computed = primitive_generator(&em.algebra)?;
    let closed = em.algebra.normalize_leading(&em.closed_form_pi());
    if computed.pi != closed {
        return Err(Error::ClosedFormMismatch);
    }
    // carry the closed-form integer lift
    let degree = Degree::from_lift(em.algebra.ctx(), em.closed_form_degree_lift());
    debug_assert_eq!(degree.residue(), computed.degree.residue());
    Ok(PrimitiveGenerator {
        pi: computed.pi,
        degree,
    })
}

/// deg(pi), reported with an integer lift when one is constructible.
pub fn kn_degree(a: &GradedAlgebra) -> Result<Degree> {
    Ok(primitive_generator(a)?.degree)
}

/// epsilon(pi): the image of the primitive generator under the
/// augmentation. Zero exactly when pi lies in the augmentation ideal.
pub fn bordism_class(a: &GradedAlgebra) -> Result<u32> {
    let gen = primitive_generator(a)?;
    a.counit_of(&gen.pi)
}

/// Outcome of the Kunneth additivity comparison for a pair of algebras.
#[derive(Debug, Clone)]
pub struct AdditivityReport {
    pub degree_expected: u32,
    pub degree_found: u32,
    pub degree_additive: bool,
    /// pi on the product equals c * (pi_A (x) pi_B); None when the spans
    /// differ.
    pub pi_matching_scalar: Option<u32>,
    pub epsilon_expected: u32,
    pub epsilon_found: u32,
    pub epsilon_multiplicative: bool,
}

impl AdditivityReport {
    pub fn ok(&self) -> bool {
        self.degree_additive && self.pi_matching_scalar.is_some() && self.epsilon_multiplicative
    }
}

/// Check deg(pi) additivity and epsilon multiplicativity on a Kunneth
/// product; failures come back as a structured report, not an error.
pub fn degree_additivity_check(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
) -> Result<AdditivityReport> {
    let f = a.ctx().field();
    let gen_a = primitive_generator(a)?;
    let gen_b = primitive_generator(b)?;
    let prod = GradedAlgebra::kunneth(a, b, CheckLevel::Fast)?;
    let gen_prod = primitive_generator(&prod)?;

    let expected = gen_a.degree.add(&gen_b.degree, a.ctx());
    let degree_additive = expected.residue() == gen_prod.degree.residue();

    // pi_A (x) pi_B in product coordinates
    let rb = b.rank();
    let mut tensor_pi: SparseVec = Vec::new();
    for &(i, ca) in &gen_a.pi {
        for &(j, cb) in &gen_b.pi {
            tensor_pi.push((i * rb + j, f.mul(ca, cb)));
        }
    }
    tensor_pi.sort_unstable_by_key(|&(i, _)| i);
    let pi_matching_scalar = {
        // gen_prod.pi = c * tensor_pi for a unit c?
        if tensor_pi.len() == gen_prod.pi.len()
            && tensor_pi
                .iter()
                .zip(&gen_prod.pi)
                .all(|(&(i, _), &(j, _))| i == j)
        {
            let (i0, c0) = tensor_pi[0];
            let found0 = gen_prod.pi.iter().find(|&&(i, _)| i == i0).unwrap().1;
            let c = f.mul(found0, f.inv(c0));
            let all = tensor_pi.iter().all(|&(i, ct)| {
                gen_prod.pi.iter().find(|&&(j, _)| j == i).unwrap().1 == f.mul(c, ct)
            });
            if all {
                Some(c)
            } else {
                None
            }
        } else {
            None
        }
    };

    let eps_a = a.counit_of(&gen_a.pi)?;
    let eps_b = b.counit_of(&gen_b.pi)?;
    let epsilon_expected = f.mul(eps_a, eps_b);
    let epsilon_found = prod.counit_of(&gen_prod.pi)?;

    Ok(AdditivityReport {
        degree_expected: expected.residue(),
        degree_found: gen_prod.degree.residue(),
        degree_additive,
        pi_matching_scalar,
        epsilon_expected,
        epsilon_found,
        epsilon_multiplicative: epsilon_expected == epsilon_found,
    })
}

/// Everything the pipeline computes for one algebra.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub pi: SparseVec,
    pub degree: Degree,
    pub epsilon_pi: u32,
    pub frobenius: FrobeniusCertificate,
    pub tor: Option<TorTable>,
    pub tor_skipped: Option<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    pub s_max: u32,
    pub tor_budget: u128,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            s_max: 2,
            tor_budget: DEFAULT_TOR_BUDGET,
        }
    }
}

/// Run the full invariant pipeline on an algebra: primitive generator,
/// degree, bordism value, Frobenius certificate, Tor table against the dual
/// module. A Tor run over budget is reported, not fatal.
pub fn compute_invariants(
    a: &GradedAlgebra,
    closed_form: Option<&EMAlgebra>,
    opts: &PipelineOptions,
) -> Result<InvariantReport> {
    let gen = match closed_form {
        Some(em) => primitive_generator_em(em)?,
        None => primitive_generator(a)?,
    };
    // epsilon(pi) vanishes exactly when pi lies in the augmentation ideal,
    // since that ideal is ker(counit) by construction
    let epsilon_pi = a.counit_of(&gen.pi)?;
    let frobenius = frobenius_certificate(a)?;
    let dual = crate::algebra::LeftModule::dual_of(a);
    let (tor, tor_skipped) = match tor_bar(a, &dual, opts.s_max, opts.tor_budget) {
        Ok(t) => (Some(t), None),
        Err(Error::TorBudgetExceeded { needed, budget }) => (
            None,
            Some(format!("tor budget exceeded: needs {needed}, budget {budget}")),
        ),
        Err(e) => return Err(e),
    };
    Ok(InvariantReport {
        pi: gen.pi,
        degree: gen.degree,
        epsilon_pi,
        frobenius,
        tor,
        tor_skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, n: u32) -> CoefficientContext {
        CoefficientContext::new(p, n).unwrap()
    }

    /// Independent oracle for rho: the minimality criterion
    /// "s minimal such that i_{q-s} < n-s-1" (with s = q allowed when the
    /// prefix is empty).
    fn rho_minimality(seq: &IndexSequence, n: u32, q: u32) -> u32 {
        let idx = seq.indices();
        for s in 0..=q {
            if q == s {
                return s + 1;
            }
            let i_qs = idx[(q - s) as usize - 1];
            if i_qs + s + 1 < n {
                return s + 1;
            }
        }
        q + 1
    }

    #[test]
    fn rho_examples() {
        let r = |v: Vec<u32>, n, q| rho(&IndexSequence::new(v, n, q).unwrap(), n, q).unwrap();
        assert_eq!(r(vec![1], 2, 1), 2);
        assert_eq!(r(vec![1], 3, 1), 1);
        assert_eq!(r(vec![2], 3, 1), 2);
        assert_eq!(r(vec![1, 2], 3, 2), 3);
    }

    #[test]
    fn rho_agrees_with_minimality_criterion() {
        for n in 2..=6u32 {
            for q in 1..n {
                for seq in IndexSequence::all(n, q) {
                    assert_eq!(
                        rho(&seq, n, q).unwrap(),
                        rho_minimality(&seq, n, q),
                        "I = {:?}, n = {n}, q = {q}",
                        seq.indices()
                    );
                }
            }
        }
    }

    #[test]
    fn rho_sum_is_n_for_q_one() {
        for n in 2..=6u32 {
            let total: u32 = IndexSequence::all(n, 1)
                .iter()
                .map(|s| rho(s, n, 1).unwrap())
                .sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn index_sequence_validation() {
        assert!(IndexSequence::new(vec![0], 2, 1).is_err()); // needs i_1 > 0
        assert!(IndexSequence::new(vec![2], 2, 1).is_err()); // needs i_q < n
        assert!(IndexSequence::new(vec![2, 1], 3, 2).is_err()); // not increasing
        assert!(IndexSequence::new(vec![1, 2], 3, 2).is_ok());
    }

    #[test]
    fn rw_221_is_truncated_height_four() {
        let em = rw_algebra(ctx(2, 2), 1, CheckLevel::Full).unwrap();
        assert_eq!(em.algebra.rank(), 4);
        assert_eq!(em.generators.len(), 1);
        assert_eq!(em.generators[0].degree_lift, 4);
        assert_eq!(em.generators[0].truncation, 4);
    }

    #[test]
    fn rw_322_has_relation_a3_eq_2a() {
        let em = rw_algebra(ctx(3, 2), 2, CheckLevel::Full).unwrap();
        let a = &em.algebra;
        assert_eq!(a.rank(), 3);
        assert_eq!(em.generators[0].degree_lift, 8);
        // a * a^2 = a^3 = 2a
        assert_eq!(a.mul_elements(&vec![(1, 1)], &vec![(2, 1)]), vec![(1, 2)]);
    }

    #[test]
    fn rw_231_is_rank_eight_product() {
        let em = rw_algebra(ctx(2, 3), 1, CheckLevel::Full).unwrap();
        assert_eq!(em.algebra.rank(), 8);
        let truncs: Vec<u32> = em.generators.iter().map(|g| g.truncation).collect();
        assert_eq!(truncs, vec![2, 4]);
    }

    #[test]
    fn rw_q_zero_and_beyond_n() {
        let g = rw_algebra(ctx(3, 2), 0, CheckLevel::Full).unwrap();
        assert_eq!(g.family, EmFamily::Group);
        assert_eq!(g.algebra.rank(), 3);

        let pt = rw_algebra(ctx(3, 2), 3, CheckLevel::Full).unwrap();
        assert_eq!(pt.family, EmFamily::Point);
        assert_eq!(pt.algebra.rank(), 1);
        let gen = primitive_generator(&pt.algebra).unwrap();
        assert_eq!(gen.pi, *pt.algebra.unit_vec());
        assert_eq!(pt.algebra.counit_of(&gen.pi).unwrap(), 1);
    }

    #[test]
    fn primitive_generators_match_closed_forms() {
        // (2,2,1): pi = a^3
        let em = rw_algebra(ctx(2, 2), 1, CheckLevel::Full).unwrap();
        let gen = primitive_generator_em(&em).unwrap();
        assert_eq!(gen.pi, vec![(3, 1)]);
        assert_eq!(gen.degree.residue(), 0);
        assert_eq!(gen.degree.lift(), Some(12));

        // (3,2,2): pi = a^2 + 1, and (a^2 + 1) a = a^3 + a = 2a + a = 0
        let em = rw_algebra(ctx(3, 2), 2, CheckLevel::Full).unwrap();
        let gen = primitive_generator_em(&em).unwrap();
        assert_eq!(gen.pi, vec![(0, 1), (2, 1)]);
        let prod = em.algebra.mul_elements(&gen.pi, &vec![(1, 1)]);
        assert!(prod.is_empty());

        // cyclic group: pi = N
        let c = ctx(3, 1);
        for m in [2usize, 5] {
            let a = cyclic_group_algebra(c, m, CheckLevel::Full).unwrap();
            let gen = primitive_generator(&a).unwrap();
            let expect: SparseVec = (0..m).map(|i| (i, 1)).collect();
            assert_eq!(gen.pi, expect);
        }
    }

    #[test]
    fn kn_degree_examples() {
        // (3,2,1): lift 48, residue 0 mod 16
        let em = rw_algebra(ctx(3, 2), 1, CheckLevel::Full).unwrap();
        let gen = primitive_generator_em(&em).unwrap();
        assert_eq!(gen.degree.lift(), Some(48));
        assert_eq!(gen.degree.residue(), 0);

        // (2,3,2): lift 84, residue 0 mod 14
        let em = rw_algebra(ctx(2, 3), 2, CheckLevel::Full).unwrap();
        let gen = primitive_generator_em(&em).unwrap();
        assert_eq!(gen.degree.lift(), Some(84));
        assert_eq!(gen.degree.residue(), 0);

        // group algebra: degree 0
        let a = cyclic_group_algebra(ctx(3, 1), 4, CheckLevel::Full).unwrap();
        assert_eq!(kn_degree(&a).unwrap().residue(), 0);
    }

    #[test]
    fn bordism_class_examples() {
        // finite group of order m: epsilon(N) = m mod p
        let c = ctx(3, 1);
        for m in 1..=6usize {
            let a = cyclic_group_algebra(c, m, CheckLevel::Full).unwrap();
            assert_eq!(bordism_class(&a).unwrap(), (m as u32) % 3, "Z/{m}");
        }
        // 0 < q < n: zero
        let em = rw_algebra(ctx(2, 2), 1, CheckLevel::Full).unwrap();
        assert_eq!(bordism_class(&em.algebra).unwrap(), 0);
        // q = n: (-1)^n mod p
        let em = rw_algebra(ctx(3, 2), 2, CheckLevel::Full).unwrap();
        assert_eq!(bordism_class(&em.algebra).unwrap(), 1);
        let em = rw_algebra(ctx(3, 3), 3, CheckLevel::Full).unwrap();
        assert_eq!(bordism_class(&em.algebra).unwrap(), 2); // (-1)^3 = -1 = 2 mod 3
    }

    #[test]
    fn q_equals_n_relation_degree_consistency() {
        for (p, n) in [(2u32, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 2)] {
            let em = rw_algebra(ctx(p, n), n, CheckLevel::Full).unwrap();
            let lift = em.generators[0].degree_lift;
            let l = 2 * ((p as i64).pow(n) - 1);
            assert_eq!((p as i64 - 1) * lift % l, 0, "(p, n) = ({p}, {n})");
        }
    }

    #[test]
    fn additivity_unit_and_pairs() {
        let c = ctx(2, 2);
        let em = rw_algebra(c, 1, CheckLevel::Full).unwrap();
        let unit = GradedAlgebra::unit_algebra(c);
        let rep = degree_additivity_check(&em.algebra, &unit).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.degree_found, 0);

        let rep = degree_additivity_check(&em.algebra, &em.algebra).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.degree_found, 0);

        // RW(3,2,1) (x) RW(3,2,2): lifts 48 + 16, residue 0 mod 16
        let c32 = ctx(3, 2);
        let a = rw_algebra(c32, 1, CheckLevel::Full).unwrap();
        let b = rw_algebra(c32, 2, CheckLevel::Full).unwrap();
        let rep = degree_additivity_check(&a.algebra, &b.algebra).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.degree_found, 0);
        let ga = primitive_generator_em(&a).unwrap();
        let gb = primitive_generator_em(&b).unwrap();
        assert_eq!(
            ga.degree.add(&gb.degree, &c32).lift(),
            Some(64)
        );
    }

    #[test]
    fn pipeline_on_small_instance() {
        let em = rw_algebra(ctx(2, 2), 1, CheckLevel::Full).unwrap();
        let rep = compute_invariants(&em.algebra, Some(&em), &PipelineOptions::default()).unwrap();
        assert_eq!(rep.degree.residue(), 0);
        assert_eq!(rep.epsilon_pi, 0);
        let tor = rep.tor.unwrap();
        assert_eq!(tor.rank(0), Some(1));
        assert!(tor.vanishes_above_zero());
    }
}
