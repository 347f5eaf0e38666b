//! Graded associative algebras over a coefficient context, given by
//! structure constants, together with presentations, group algebras,
//! Kunneth products, ideals and left modules.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::fp::{sparse, Echelon, FpMat, SparseVec};
use crate::graded::{CoefficientContext, Degree, GradedMap, GradedSpace};

/// How much eager verification to run at construction time. `Full` performs
/// the O(rank^3) associativity sweep; `Fast` skips it for bulk work on
/// algebras whose construction preserves the axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckLevel {
    Full,
    Fast,
}

/// Monomial metadata for algebras presented by generators: exponent vector
/// per basis element, used for reporting and for degree lifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    pub generator_names: Vec<String>,
    pub generator_degrees: Vec<Degree>,
    /// `exponents[i]` is the exponent vector of basis element i.
    pub exponents: Vec<Vec<u32>>,
}

impl MonomialBasis {
    pub fn label(&self, exps: &[u32]) -> String {
        let terms: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                if e == 1 {
                    self.generator_names[k].clone()
                } else {
                    format!("{}^{}", self.generator_names[k], e)
                }
            })
            .collect();
        if terms.is_empty() {
            "1".to_string()
        } else {
            terms.join("*")
        }
    }

    pub fn degree_of(&self, ctx: &CoefficientContext, exps: &[u32]) -> Degree {
        let mut d = Degree::zero();
        for (k, &e) in exps.iter().enumerate() {
            d = d.add(&self.generator_degrees[k].scaled(e, ctx), ctx);
        }
        d
    }
}

/// A graded algebra with a full structure-constant table.
///
/// `mul[i * rank + j]` holds the coordinates of `b_i * b_j`. The counit, when
/// present, is a degree-0 functional with `counit(1) = 1` that is an algebra
/// map.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    space: GradedSpace,
    unit: SparseVec,
    mul: Vec<SparseVec>,
    counit: Option<Vec<u32>>,
    graded_commutative: bool,
    monomials: Option<MonomialBasis>,
}

impl GradedAlgebra {
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        space: GradedSpace,
        unit: SparseVec,
        mul: Vec<SparseVec>,
        counit: Option<Vec<u32>>,
        graded_commutative: bool,
        monomials: Option<MonomialBasis>,
        level: CheckLevel,
    ) -> Result<Self> {
        let rank = space.rank();
        if mul.len() != rank * rank {
            return Err(Error::DimensionMismatch {
                detail: format!("mul table has {} entries for rank {rank}", mul.len()),
            });
        }
        if let Some(eps) = &counit {
            if eps.len() != rank {
                return Err(Error::DimensionMismatch {
                    detail: "counit length".into(),
                });
            }
        }
        let alg = GradedAlgebra {
            space,
            unit,
            mul,
            counit,
            graded_commutative,
            monomials,
        };
        alg.verify(level)?;
        Ok(alg)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn ctx(&self) -> &CoefficientContext {
        self.space.ctx()
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn unit_vec(&self) -> &SparseVec {
        &self.unit
    }

    pub fn counit(&self) -> Option<&[u32]> {
        self.counit.as_deref()
    }

    pub fn is_graded_commutative(&self) -> bool {
        self.graded_commutative
    }

    pub fn monomials(&self) -> Option<&MonomialBasis> {
        self.monomials.as_ref()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mul[i * self.rank() + j]
    }

    /// Product of two elements given as sparse coordinate vectors.
    pub fn mul_elements(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let f = self.ctx().field();
        let mut acc = vec![0u32; self.rank()];
        for &(i, a) in x {
            for &(j, b) in y {
                let c = f.mul(a, b);
                sparse::add_scaled_into(f, &mut acc, self.mul_basis(i, j), c);
            }
        }
        sparse::from_dense(&acc)
    }

    pub fn counit_of(&self, x: &SparseVec) -> Result<u32> {
        let eps = self.counit.as_ref().ok_or(Error::MissingCounit)?;
        let f = self.ctx().field();
        let mut acc = 0u32;
        for &(i, c) in x {
            acc = f.add(acc, f.mul(c, eps[i]));
        }
        Ok(acc)
    }

    /// The common degree of a homogeneous element; the lift is taken from the
    /// leading (last) supporting basis element. Returns None for 0 or for
    /// inhomogeneous elements.
    pub fn homogeneous_degree(&self, x: &SparseVec) -> Option<Degree> {
        let (&(last, _), residue) = match x.split_last() {
            Some((last, _)) => (last, self.space.degree(last.0).residue()),
            None => return None,
        };
        if x.iter()
            .any(|&(i, _)| self.space.degree(i).residue() != residue)
        {
            return None;
        }
        Some(*self.space.degree(last))
    }

    /// Scale so the last nonzero coordinate (leading monomial in monomial
    /// bases) becomes 1.
    pub fn normalize_leading(&self, x: &SparseVec) -> SparseVec {
        let f = self.ctx().field();
        match x.last() {
            Some(&(_, c)) if c != 1 => sparse::scale(f, x, f.inv(c)),
            _ => x.clone(),
        }
    }

    pub fn element_string(&self, x: &SparseVec) -> String {
        if x.is_empty() {
            return "0".to_string();
        }
        x.iter()
            .map(|&(i, c)| {
                if c == 1 {
                    self.space.label(i).to_string()
                } else {
                    format!("{}*{}", c, self.space.label(i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Structure-constant corruption hook for negative-control tests: scales
    /// the product of basis elements (i, j) by `c`.
    #[doc(hidden)]
    pub fn scale_structure_constant(&mut self, i: usize, j: usize, c: u32) {
        let f = *self.ctx().field();
        let rank = self.rank();
        let entry = &mut self.mul[i * rank + j];
        *entry = sparse::scale(&f, entry, c);
    }

    /// Verify the algebra axioms: two-sided unit, degree additivity of the
    /// table, counit conditions, the graded-commutativity flag, and (at
    /// `Full`) associativity on all basis triples.
    pub fn verify(&self, level: CheckLevel) -> Result<()> {
        let rank = self.rank();
        let f = self.ctx().field();
        let ctx = self.ctx();

        // degree additivity
        for i in 0..rank {
            for j in 0..rank {
                let expect = self.space.degree(i).add(self.space.degree(j), ctx);
                for &(k, _) in self.mul_basis(i, j) {
                    if self.space.degree(k) != &expect {
                        return Err(Error::AlgebraCheck {
                            reason: format!(
                                "degree additivity fails on ({}, {})",
                                self.space.label(i),
                                self.space.label(j)
                            ),
                        });
                    }
                }
            }
        }

        // two-sided unit
        for i in 0..rank {
            let e_i: SparseVec = vec![(i, 1)];
            let left = self.mul_elements(&self.unit, &e_i);
            let right = self.mul_elements(&e_i, &self.unit);
            if left != e_i || right != e_i {
                return Err(Error::AlgebraCheck {
                    reason: format!("unit is not two-sided on {}", self.space.label(i)),
                });
            }
        }

        // counit
        if let Some(eps) = &self.counit {
            let mut on_unit = 0u32;
            for &(i, c) in &self.unit {
                on_unit = f.add(on_unit, f.mul(c, eps[i]));
            }
            if on_unit != 1 {
                return Err(Error::AlgebraCheck {
                    reason: "counit(1) != 1".into(),
                });
            }
            for (i, &e) in eps.iter().enumerate() {
                if e != 0 && self.space.degree(i).residue() != 0 {
                    return Err(Error::AlgebraCheck {
                        reason: format!(
                            "counit is nonzero on {} of nonzero degree",
                            self.space.label(i)
                        ),
                    });
                }
            }
            for i in 0..rank {
                for j in 0..rank {
                    let mut prod_eps = 0u32;
                    for &(k, c) in self.mul_basis(i, j) {
                        prod_eps = f.add(prod_eps, f.mul(c, eps[k]));
                    }
                    if prod_eps != f.mul(eps[i], eps[j]) {
                        return Err(Error::AlgebraCheck {
                            reason: format!(
                                "counit is not an algebra map on ({}, {})",
                                self.space.label(i),
                                self.space.label(j)
                            ),
                        });
                    }
                }
            }
        }

        // graded commutativity, when claimed
        if self.graded_commutative {
            for i in 0..rank {
                for j in 0..=i {
                    let ij = self.mul_basis(i, j);
                    let ji = self.mul_basis(j, i);
                    let sign_flip = self.space.degree(i).parity() == 1
                        && self.space.degree(j).parity() == 1;
                    let expect = if sign_flip {
                        sparse::scale(f, ji, f.neg(1))
                    } else {
                        ji.clone()
                    };
                    if *ij != expect {
                        return Err(Error::AlgebraCheck {
                            reason: format!(
                                "graded commutativity fails on ({}, {})",
                                self.space.label(i),
                                self.space.label(j)
                            ),
                        });
                    }
                }
            }
        }

        // associativity on all basis triples
        if level == CheckLevel::Full {
            for i in 0..rank {
                for j in 0..rank {
                    let ij = self.mul_basis(i, j).clone();
                    for k in 0..rank {
                        let mut left = vec![0u32; rank];
                        for &(m, c) in &ij {
                            sparse::add_scaled_into(f, &mut left, self.mul_basis(m, k), c);
                        }
                        let mut right = vec![0u32; rank];
                        for &(m, c) in self.mul_basis(j, k) {
                            sparse::add_scaled_into(f, &mut right, self.mul_basis(i, m), c);
                        }
                        if left != right {
                            return Err(Error::AlgebraCheck {
                                reason: format!(
                                    "associativity fails on ({}, {}, {})",
                                    self.space.label(i),
                                    self.space.label(j),
                                    self.space.label(k)
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The rank-1 algebra R.
    pub fn unit_algebra(ctx: CoefficientContext) -> GradedAlgebra {
        GradedAlgebra {
            space: GradedSpace::unit(ctx),
            unit: vec![(0, 1)],
            mul: vec![vec![(0, 1)]],
            counit: Some(vec![1]),
            graded_commutative: true,
            monomials: Some(MonomialBasis {
                generator_names: vec![],
                generator_degrees: vec![],
                exponents: vec![vec![]],
            }),
        }
    }

    /// Kunneth product: tensor algebra with Koszul-signed multiplication
    /// (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd.
    pub fn kunneth(a: &GradedAlgebra, b: &GradedAlgebra, level: CheckLevel) -> Result<Self> {
        if a.ctx() != b.ctx() {
            return Err(Error::ContextMismatch);
        }
        let f = a.ctx().field();
        let space = a.space.tensor(&b.space)?;
        let ra = a.rank();
        let rb = b.rank();
        let rank = ra * rb;

        let mut mul = vec![SparseVec::new(); rank * rank];
        for i in 0..ra {
            for j in 0..rb {
                let row = i * rb + j;
                for k in 0..ra {
                    let sign_flip = b.space.degree(j).parity() == 1
                        && a.space.degree(k).parity() == 1;
                    let aa = a.mul_basis(i, k);
                    for l in 0..rb {
                        let bb = b.mul_basis(j, l);
                        if aa.is_empty() || bb.is_empty() {
                            continue;
                        }
                        let col = k * rb + l;
                        let mut out = SparseVec::with_capacity(aa.len() * bb.len());
                        for &(m, ca) in aa {
                            for &(n, cb) in bb {
                                let mut c = f.mul(ca, cb);
                                if sign_flip {
                                    c = f.neg(c);
                                }
                                out.push((m * rb + n, c));
                            }
                        }
                        out.sort_unstable_by_key(|&(idx, _)| idx);
                        mul[row * rank + col] = out;
                    }
                }
            }
        }

        let mut unit = SparseVec::new();
        for &(i, ca) in &a.unit {
            for &(j, cb) in &b.unit {
                unit.push((i * rb + j, f.mul(ca, cb)));
            }
        }
        unit.sort_unstable_by_key(|&(idx, _)| idx);

        let counit = match (&a.counit, &b.counit) {
            (Some(ea), Some(eb)) => {
                let mut eps = vec![0u32; rank];
                for i in 0..ra {
                    for j in 0..rb {
                        eps[i * rb + j] = f.mul(ea[i], eb[j]);
                    }
                }
                Some(eps)
            }
            _ => None,
        };

        let monomials = match (&a.monomials, &b.monomials) {
            (Some(ma), Some(mb)) => {
                let taken: HashSet<&String> = ma.generator_names.iter().collect();
                let mut names = ma.generator_names.clone();
                for name in &mb.generator_names {
                    if taken.contains(name) {
                        names.push(format!("{name}'"));
                    } else {
                        names.push(name.clone());
                    }
                }
                let mut degrees = ma.generator_degrees.clone();
                degrees.extend(mb.generator_degrees.iter().copied());
                let mut exponents = Vec::with_capacity(rank);
                for ea in &ma.exponents {
                    for eb in &mb.exponents {
                        let mut e = ea.clone();
                        e.extend_from_slice(eb);
                        exponents.push(e);
                    }
                }
                Some(MonomialBasis {
                    generator_names: names,
                    generator_degrees: degrees,
                    exponents,
                })
            }
            _ => None,
        };

        GradedAlgebra::from_parts(
            space,
            unit,
            mul,
            counit,
            a.graded_commutative && b.graded_commutative,
            monomials,
            level,
        )
    }
}

/// A truncated-polynomial presentation: commuting generators with relations
/// `g^t = r(g)`, where every term of `r` has exponent < t and no constant
/// term (so the counit can kill every generator).
#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: Vec<PresGenerator>,
}

#[derive(Debug, Clone)]
pub struct PresGenerator {
    pub name: String,
    pub degree_lift: i64,
    pub truncation: u32,
    /// Relation right-hand side as (coefficient, exponent) terms; the
    /// coefficient is reduced mod p on construction.
    pub rhs: Vec<(i64, u32)>,
}

impl Presentation {
    pub fn empty() -> Self {
        Presentation { generators: vec![] }
    }

    pub fn rank(&self) -> u128 {
        self.generators
            .iter()
            .map(|g| g.truncation as u128)
            .product()
    }
}

/// Build an algebra from a presentation: monomial basis ordered by total
/// exponent then lexicographic exponent vector, products reduced by the
/// relations, counit dual to the unit monomial.
pub fn from_presentation(
    ctx: CoefficientContext,
    pres: &Presentation,
    level: CheckLevel,
) -> Result<GradedAlgebra> {
    let f = ctx.field();
    let ngen = pres.generators.len();
    let mut seen = HashSet::new();
    for g in &pres.generators {
        if !seen.insert(g.name.clone()) {
            return Err(Error::DuplicateLabel {
                label: g.name.clone(),
            });
        }
        if g.truncation < 1 {
            return Err(Error::InvalidTruncation {
                name: g.name.clone(),
            });
        }
        let deg = Degree::from_lift(&ctx, g.degree_lift);
        if deg.parity() == 1 {
            return Err(Error::OddGeneratorDegree {
                name: g.name.clone(),
                residue: deg.residue(),
            });
        }
        for &(c, e) in &g.rhs {
            if f.reduce(c) == 0 {
                continue;
            }
            if e >= g.truncation {
                return Err(Error::RelationExponentTooLarge {
                    name: g.name.clone(),
                });
            }
            if e == 0 {
                return Err(Error::RelationConstantTerm {
                    name: g.name.clone(),
                });
            }
            // deg(g^t) = deg(g^e) in Z/L
            let dt = deg.scaled(g.truncation, &ctx);
            let de = deg.scaled(e, &ctx);
            if dt != de {
                return Err(Error::InhomogeneousRelation {
                    name: g.name.clone(),
                });
            }
        }
    }

    // monomial basis, ordered by (total exponent, lexicographic vector)
    let mut exps_list: Vec<Vec<u32>> = vec![vec![]];
    for g in &pres.generators {
        let mut next = Vec::with_capacity(exps_list.len() * g.truncation as usize);
        for e in &exps_list {
            for k in 0..g.truncation {
                let mut v = e.clone();
                v.push(k);
                next.push(v);
            }
        }
        exps_list = next;
    }
    exps_list.sort_by(|a, b| {
        let (ta, tb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        ta.cmp(&tb).then_with(|| a.cmp(b))
    });
    let index: HashMap<Vec<u32>, usize> = exps_list
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), i))
        .collect();

    let monomials = MonomialBasis {
        generator_names: pres.generators.iter().map(|g| g.name.clone()).collect(),
        generator_degrees: pres
            .generators
            .iter()
            .map(|g| Degree::from_lift(&ctx, g.degree_lift))
            .collect(),
        exponents: exps_list.clone(),
    };

    let basis: Vec<(String, Degree)> = exps_list
        .iter()
        .map(|e| (monomials.label(e), monomials.degree_of(&ctx, e)))
        .collect();
    let space = GradedSpace::new(ctx, basis)?;
    let rank = space.rank();

    // reduce an exponent vector through the relations
    fn reduce_exps(
        pres: &Presentation,
        f: &crate::fp::PrimeField,
        exps: &mut [u32],
        coeff: u32,
        acc: &mut BTreeMap<Vec<u32>, u32>,
    ) {
        if coeff == 0 {
            return;
        }
        let over = exps
            .iter()
            .enumerate()
            .find(|(k, &e)| e >= pres.generators[*k].truncation)
            .map(|(k, _)| k);
        match over {
            None => {
                let entry = acc.entry(exps.to_vec()).or_insert(0);
                *entry = f.add(*entry, coeff);
            }
            Some(k) => {
                let g = &pres.generators[k];
                let base = exps[k] - g.truncation;
                for &(c, e) in &g.rhs {
                    let c = f.reduce(c);
                    if c == 0 {
                        continue;
                    }
                    let mut next = exps.to_vec();
                    next[k] = base + e;
                    reduce_exps(pres, f, &mut next, f.mul(coeff, c), acc);
                }
            }
        }
    }

    let mut mul = vec![SparseVec::new(); rank * rank];
    for (i, ei) in exps_list.iter().enumerate() {
        for (j, ej) in exps_list.iter().enumerate() {
            let mut prod: Vec<u32> = ei.iter().zip(ej).map(|(a, b)| a + b).collect();
            let mut acc = BTreeMap::new();
            reduce_exps(pres, f, &mut prod, 1, &mut acc);
            let mut out: SparseVec = acc
                .into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(e, c)| (index[&e], c))
                .collect();
            out.sort_unstable_by_key(|&(idx, _)| idx);
            mul[i * rank + j] = out;
        }
    }

    let unit_idx = index[&vec![0u32; ngen]];
    let mut counit = vec![0u32; rank];
    counit[unit_idx] = 1;

    GradedAlgebra::from_parts(
        space,
        vec![(unit_idx, 1)],
        mul,
        Some(counit),
        true,
        Some(monomials),
        level,
    )
}

/// A finite group given by its multiplication table: `table[i][j]` is the
/// index of the product of elements i and j.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn cyclic(m: usize) -> GroupTable {
        let labels = (0..m)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        let table = (0..m)
            .map(|i| (0..m).map(|j| (i + j) % m).collect())
            .collect();
        GroupTable { labels, table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Check the group axioms; returns the index of the identity.
    pub fn validate(&self) -> Result<usize> {
        let m = self.table.len();
        if m == 0 {
            return Err(Error::NotAGroup {
                reason: "empty table".into(),
            });
        }
        if self.labels.len() != m {
            return Err(Error::NotAGroup {
                reason: "label count differs from table size".into(),
            });
        }
        for (i, row) in self.table.iter().enumerate() {
            if row.len() != m {
                return Err(Error::NotAGroup {
                    reason: format!("row {i} has wrong length"),
                });
            }
            if row.iter().any(|&x| x >= m) {
                return Err(Error::NotAGroup {
                    reason: format!("row {i} has an out-of-range entry"),
                });
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| self.table[e][x] == x && self.table[x][e] == x))
            .ok_or_else(|| Error::NotAGroup {
                reason: "no identity element".into(),
            })?;
        for x in 0..m {
            if !(0..m).any(|y| self.table[x][y] == identity && self.table[y][x] == identity) {
                return Err(Error::NotAGroup {
                    reason: format!("element {x} has no inverse"),
                });
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(Error::NotAGroup {
                            reason: format!("associativity fails on ({a}, {b}, {c})"),
                        });
                    }
                }
            }
        }
        Ok(identity)
    }

    pub fn is_abelian(&self) -> bool {
        let m = self.table.len();
        (0..m).all(|i| (0..m).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn inverse_of(&self, x: usize, identity: usize) -> usize {
        (0..self.table.len())
            .find(|&y| self.table[x][y] == identity)
            .expect("validated group has inverses")
    }
}

/// The group algebra R[G]: basis the group elements in degree 0, counit
/// identically 1.
pub fn group_algebra(
    ctx: CoefficientContext,
    group: &GroupTable,
    level: CheckLevel,
) -> Result<GradedAlgebra> {
    let identity = group.validate()?;
    let m = group.order();
    let basis: Vec<(String, Degree)> = group
        .labels
        .iter()
        .map(|l| (l.clone(), Degree::zero()))
        .collect();
    let space = GradedSpace::new(ctx, basis)?;
    let mut mul = vec![SparseVec::new(); m * m];
    for i in 0..m {
        for j in 0..m {
            mul[i * m + j] = vec![(group.table[i][j], 1)];
        }
    }
    GradedAlgebra::from_parts(
        space,
        vec![(identity, 1)],
        mul,
        Some(vec![1; m]),
        group.is_abelian(),
        None,
        level,
    )
}

/// R[Z/m] with power-monomial metadata attached, so reports can print the
/// basis as powers of g.
pub fn cyclic_group_algebra(
    ctx: CoefficientContext,
    m: usize,
    level: CheckLevel,
) -> Result<GradedAlgebra> {
    let mut alg = group_algebra(ctx, &GroupTable::cyclic(m), level)?;
    alg.monomials = Some(MonomialBasis {
        generator_names: vec!["g".to_string()],
        generator_degrees: vec![Degree::zero()],
        exponents: (0..m as u32).map(|k| vec![k]).collect(),
    });
    Ok(alg)
}

/// A homogeneous subspace closed under left and right multiplication.
#[derive(Debug, Clone)]
pub struct Ideal {
    basis: Vec<SparseVec>,
    degrees: Vec<Degree>,
}

impl Ideal {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn zero() -> Ideal {
        Ideal {
            basis: vec![],
            degrees: vec![],
        }
    }

    /// Check closure under left and right multiplication by every basis
    /// element of the algebra.
    pub fn verify(&self, a: &GradedAlgebra) -> Result<()> {
        let f = a.ctx().field();
        let mut spans: BTreeMap<u32, Echelon> = BTreeMap::new();
        for (v, d) in self.basis.iter().zip(&self.degrees) {
            spans
                .entry(d.residue())
                .or_insert_with(|| Echelon::new(a.rank()))
                .insert(f, sparse::to_dense(v, a.rank()));
        }
        let in_span = |v: &SparseVec, spans: &BTreeMap<u32, Echelon>| -> bool {
            if v.is_empty() {
                return true;
            }
            // split by stratum
            let mut by_res: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            for &(i, c) in v {
                let r = a.space().degree(i).residue();
                by_res
                    .entry(r)
                    .or_insert_with(|| vec![0u32; a.rank()])[i] = c;
            }
            by_res.iter().all(|(r, dense)| {
                spans
                    .get(r)
                    .map(|e| e.contains(f, dense))
                    .unwrap_or(false)
            })
        };
        for y in &self.basis {
            for i in 0..a.rank() {
                let e_i: SparseVec = vec![(i, 1)];
                if !in_span(&a.mul_elements(&e_i, y), &spans)
                    || !in_span(&a.mul_elements(y, &e_i), &spans)
                {
                    return Err(Error::NotAnIdeal {
                        reason: format!(
                            "span is not closed under multiplication by {}",
                            a.space().label(i)
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// ker(counit) as an ideal; rank is rank(A) - 1.
pub fn augmentation_ideal(a: &GradedAlgebra) -> Result<Ideal> {
    let eps = a.counit().ok_or(Error::MissingCounit)?;
    let ctx = *a.ctx();
    let mut mat = FpMat::zero(1, a.rank());
    for (j, &e) in eps.iter().enumerate() {
        mat.set(0, j, e);
    }
    let eps_map = GradedMap::new(
        a.space().clone(),
        GradedSpace::unit(ctx),
        Degree::zero(),
        mat,
    )?;
    let (ker, incl) = eps_map.kernel();
    let basis: Vec<SparseVec> = (0..ker.rank())
        .map(|j| sparse::from_dense(&incl.matrix().column(j)))
        .collect();
    let degrees: Vec<Degree> = (0..ker.rank()).map(|j| *ker.degree(j)).collect();
    Ok(Ideal { basis, degrees })
}

/// Smallest two-sided ideal containing the given homogeneous elements.
pub fn ideal_generated_by(a: &GradedAlgebra, gens: &[SparseVec]) -> Result<Ideal> {
    let f = a.ctx().field();
    let mut spans: BTreeMap<u32, Echelon> = BTreeMap::new();
    let mut frontier: Vec<SparseVec> = Vec::new();
    let push = |v: &SparseVec,
                    spans: &mut BTreeMap<u32, Echelon>,
                    frontier: &mut Vec<SparseVec>|
     -> Result<()> {
        if v.is_empty() {
            return Ok(());
        }
        let deg = a
            .homogeneous_degree(v)
            .ok_or_else(|| Error::NotAnIdeal {
                reason: "ideal generator is not homogeneous".into(),
            })?;
        let ech = spans
            .entry(deg.residue())
            .or_insert_with(|| Echelon::new(a.rank()));
        if ech.insert(f, sparse::to_dense(v, a.rank())) {
            frontier.push(v.clone());
        }
        Ok(())
    };
    for g in gens {
        push(g, &mut spans, &mut frontier)?;
    }
    while let Some(y) = frontier.pop() {
        for i in 0..a.rank() {
            let e_i: SparseVec = vec![(i, 1)];
            push(&a.mul_elements(&e_i, &y), &mut spans, &mut frontier)?;
            push(&a.mul_elements(&y, &e_i), &mut spans, &mut frontier)?;
        }
    }
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for (res, ech) in &spans {
        for row in ech.basis_rows() {
            basis.push(sparse::from_dense(row));
            degrees.push(Degree::new(*res));
        }
    }
    Ok(Ideal { basis, degrees })
}

/// Left annihilator { x : x * y = 0 for all y in I }, returned as a
/// homogeneous subspace with its inclusion map.
///
/// Stacks the right-multiplication constraints for a basis of I, stratum by
/// stratum, with early exit once a stratum is forced to zero.
pub fn left_annihilator(a: &GradedAlgebra, ideal: &Ideal) -> (GradedSpace, GradedMap) {
    let ctx = *a.ctx();
    let f = ctx.field();
    let rank = a.rank();
    let mut vectors: Vec<(Degree, Vec<u32>)> = Vec::new();

    for (_, cols) in a.space().strata() {
        let dim = cols.len();
        let mut ech = Echelon::new(dim);
        'constraints: for (y, ydeg) in ideal.basis().iter().zip(ideal.degrees()) {
            // products b_s * y for s in this stratum, all of degree res + |y|
            let prods: Vec<SparseVec> = cols
                .iter()
                .map(|&s| a.mul_elements(&vec![(s, 1)], y))
                .collect();
            let _ = ydeg;
            // target coordinates that actually occur
            let mut targets: Vec<usize> = prods
                .iter()
                .flat_map(|p| p.iter().map(|&(t, _)| t))
                .collect();
            targets.sort_unstable();
            targets.dedup();
            for &t in &targets {
                let mut row = vec![0u32; dim];
                for (c, p) in prods.iter().enumerate() {
                    if let Ok(pos) = p.binary_search_by_key(&t, |&(idx, _)| idx) {
                        row[c] = p[pos].1;
                    }
                }
                ech.insert(f, row);
                if ech.rank() == dim {
                    break 'constraints; // stratum kernel is zero
                }
            }
        }
        if ech.rank() == dim {
            continue;
        }
        for k in ech.null_space(f) {
            let mut full = vec![0u32; rank];
            for (c, &s) in cols.iter().enumerate() {
                full[s] = k[c];
            }
            vectors.push((*a.space().degree(cols[0]), full));
        }
    }

    let basis: Vec<(String, Degree)> = vectors
        .iter()
        .enumerate()
        .map(|(i, (d, _))| (format!("ann{i}"), *d))
        .collect();
    let space = GradedSpace::new(ctx, basis).expect("annihilator labels are distinct");
    let mut mat = FpMat::zero(rank, vectors.len());
    for (j, (_, v)) in vectors.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            mat.set(i, j, x);
        }
    }
    let incl = GradedMap::new(space.clone(), a.space().clone(), Degree::zero(), mat)
        .expect("annihilator basis is homogeneous");
    (space, incl)
}

/// A left module over a graded algebra, given by action maps on a basis:
/// `action[i * rank_m + j]` is b_i . m_j.
#[derive(Debug, Clone)]
pub struct LeftModule {
    space: GradedSpace,
    action: Vec<SparseVec>,
}

impl LeftModule {
    pub fn from_parts(
        a: &GradedAlgebra,
        space: GradedSpace,
        action: Vec<SparseVec>,
        level: CheckLevel,
    ) -> Result<Self> {
        if action.len() != a.rank() * space.rank() {
            return Err(Error::DimensionMismatch {
                detail: "action table size".into(),
            });
        }
        let m = LeftModule { space, action };
        m.verify(a, level)?;
        Ok(m)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn act_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.action[i * self.space.rank() + j]
    }

    /// x . v for x in the algebra (sparse) and v in the module (sparse).
    pub fn act(&self, a: &GradedAlgebra, x: &SparseVec, v: &SparseVec) -> SparseVec {
        let f = a.ctx().field();
        let mut acc = vec![0u32; self.rank()];
        for &(i, c) in x {
            for &(j, d) in v {
                sparse::add_scaled_into(f, &mut acc, self.act_basis(i, j), f.mul(c, d));
            }
        }
        sparse::from_dense(&acc)
    }

    /// Module axioms: unit acts as identity, action is associative over the
    /// multiplication table, and action maps are degree-homogeneous.
    pub fn verify(&self, a: &GradedAlgebra, level: CheckLevel) -> Result<()> {
        let f = a.ctx().field();
        let ctx = a.ctx();
        let rm = self.rank();
        for j in 0..rm {
            let e_j: SparseVec = vec![(j, 1)];
            if self.act(a, a.unit_vec(), &e_j) != e_j {
                return Err(Error::NotAModule {
                    reason: format!("unit does not act as identity on {}", self.space.label(j)),
                });
            }
        }
        for i in 0..a.rank() {
            for j in 0..rm {
                let expect = a.space().degree(i).add(self.space.degree(j), ctx);
                for &(k, _) in self.act_basis(i, j) {
                    if self.space.degree(k) != &expect {
                        return Err(Error::NotAModule {
                            reason: format!(
                                "action of {} on {} is not homogeneous",
                                a.space().label(i),
                                self.space.label(j)
                            ),
                        });
                    }
                }
            }
        }
        if level == CheckLevel::Full {
            for i in 0..a.rank() {
                for j in 0..a.rank() {
                    let prod = a.mul_basis(i, j).clone();
                    for m in 0..rm {
                        let mut left = vec![0u32; rm];
                        for &(k, c) in &prod {
                            sparse::add_scaled_into(f, &mut left, self.act_basis(k, m), c);
                        }
                        let mut right = vec![0u32; rm];
                        for &(k, c) in self.act_basis(j, m) {
                            sparse::add_scaled_into(f, &mut right, self.act_basis(i, k), c);
                        }
                        if left != right {
                            return Err(Error::NotAModule {
                                reason: format!(
                                    "(b_i b_j) m != b_i (b_j m) on ({}, {}, {})",
                                    a.space().label(i),
                                    a.space().label(j),
                                    self.space.label(m)
                                ),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A as a left module over itself.
    pub fn regular(a: &GradedAlgebra) -> LeftModule {
        let rank = a.rank();
        let mut action = Vec::with_capacity(rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                action.push(a.mul_basis(i, j).clone());
            }
        }
        LeftModule {
            space: a.space().clone(),
            action,
        }
    }

    /// The dual A* with the standard left action (y . xi)(x) = +-xi(x y).
    pub fn dual_of(a: &GradedAlgebra) -> LeftModule {
        let f = a.ctx().field();
        let rank = a.rank();
        let space = a.space().dual();
        let mut action = vec![SparseVec::new(); rank * rank];
        for k in 0..rank {
            for i in 0..rank {
                for &(j, c) in a.mul_basis(k, i) {
                    // b_i . m_j^* picks up xi(b_k b_i) at m_k^*
                    let sign_flip = a.space().degree(i).parity() == 1
                        && a.space().degree(j).parity() == 1;
                    let v = if sign_flip { f.neg(c) } else { c };
                    action[i * rank + j].push((k, v));
                }
            }
        }
        for entry in &mut action {
            entry.sort_unstable_by_key(|&(idx, _)| idx);
        }
        LeftModule { space, action }
    }

    /// R with the action through the counit.
    pub fn trivial(a: &GradedAlgebra) -> Result<LeftModule> {
        let eps = a.counit().ok_or(Error::MissingCounit)?;
        let space = GradedSpace::unit(*a.ctx());
        let action: Vec<SparseVec> = eps
            .iter()
            .map(|&e| if e != 0 { vec![(0, e)] } else { vec![] })
            .collect();
        Ok(LeftModule { space, action })
    }

    pub fn zero(a: &GradedAlgebra) -> LeftModule {
        LeftModule {
            space: GradedSpace::new(*a.ctx(), vec![]).expect("empty basis"),
            action: vec![],
        }
    }
}

/// M / (aug ideal . M) with the projection map. The quotient basis is the
/// set of non-pivot module basis elements, stratum by stratum.
pub fn module_indecomposables(
    a: &GradedAlgebra,
    m: &LeftModule,
) -> Result<(GradedSpace, GradedMap)> {
    let ideal = augmentation_ideal(a)?;
    let ctx = *a.ctx();
    let f = ctx.field();
    let rm = m.rank();

    // span of I.M per stratum, in stratum-local coordinates
    let strata = m.space().strata();
    let mut local: BTreeMap<u32, (Vec<usize>, Echelon)> = strata
        .into_iter()
        .map(|(res, cols)| {
            let dim = cols.len();
            (res, (cols, Echelon::new(dim)))
        })
        .collect();
    for y in ideal.basis() {
        for j in 0..rm {
            let v = m.act(a, y, &vec![(j, 1)]);
            if v.is_empty() {
                continue;
            }
            let res = m.space().degree(v[0].0).residue();
            let (cols, ech) = local.get_mut(&res).expect("stratum exists");
            let mut dense = vec![0u32; cols.len()];
            for &(i, c) in &v {
                let pos = cols.binary_search(&i).expect("index in stratum");
                dense[pos] = c;
            }
            ech.insert(f, dense);
        }
    }

    // quotient basis: non-pivot columns; projection by reduction
    let mut qbasis: Vec<(String, Degree)> = Vec::new();
    let mut qcols: Vec<usize> = Vec::new(); // global index of each quotient basis elem
    let mut proj_cols: Vec<Vec<(usize, u32)>> = vec![Vec::new(); rm]; // per module basis elem: (qrow, coeff)
    let mut qrow_of_global: HashMap<usize, usize> = HashMap::new();

    for (cols, ech) in local.values() {
        let pivots: HashSet<usize> = ech.pivot_columns().into_iter().collect();
        for (c, &gi) in cols.iter().enumerate() {
            if !pivots.contains(&c) {
                let qrow = qbasis.len();
                qbasis.push((m.space().label(gi).to_string(), *m.space().degree(gi)));
                qcols.push(gi);
                qrow_of_global.insert(gi, qrow);
            }
        }
    }
    for (cols, ech) in local.values() {
        for (c, &gi) in cols.iter().enumerate() {
            // reduce e_c against the span; residual is supported on free columns
            let mut dense = vec![0u32; cols.len()];
            dense[c] = 1;
            let mut v = dense;
            for (pc, row) in ech.pivot_columns().iter().zip(ech.basis_rows()) {
                let coeff = v[*pc];
                if coeff != 0 {
                    for (j, &r) in row.iter().enumerate() {
                        if r != 0 {
                            v[j] = f.sub(v[j], f.mul(coeff, r));
                        }
                    }
                }
            }
            for (j, &x) in v.iter().enumerate() {
                if x != 0 {
                    let qrow = qrow_of_global[&cols[j]];
                    proj_cols[gi].push((qrow, x));
                }
            }
        }
    }

    let qspace = match GradedSpace::new(ctx, qbasis.clone()) {
        Ok(s) => s,
        Err(_) => {
            // labels can collide across strata in exotic bases; fall back to q{i}
            let relabeled: Vec<(String, Degree)> = qbasis
                .iter()
                .enumerate()
                .map(|(i, (_, d))| (format!("q{i}"), *d))
                .collect();
            GradedSpace::new(ctx, relabeled)?
        }
    };
    let mut mat = FpMat::zero(qspace.rank(), rm);
    for (j, entries) in proj_cols.iter().enumerate() {
        for &(qrow, c) in entries {
            mat.set(qrow, j, c);
        }
    }
    let proj = GradedMap::new(m.space().clone(), qspace.clone(), Degree::zero(), mat)?;
    Ok((qspace, proj))
}
