//! Z/L-graded F_p vector spaces and degree-homogeneous linear maps.
//!
//! The coefficient ring K(n)_* = F_p[v_n, v_n^-1] is a graded field with
//! |v_n| = 2(p^n - 1). Modules over it are represented as Z/L-graded F_p
//! spaces with L = 2(p^n - 1): multiplication by v_n becomes the identity
//! and all periodicity bookkeeping lives in the residue grading.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fp::{FpMat, PrimeField};

/// The pair (p, n) together with the grading period L = 2(p^n - 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientContext {
    field: PrimeField,
    n: u32,
    period: u32,
}

impl CoefficientContext {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if n < 1 {
            return Err(Error::InvalidHeight { n });
        }
        let pn = (p as u64).checked_pow(n).filter(|&x| x <= (u32::MAX as u64 + 2) / 2);
        let Some(pn) = pn else {
            return Err(Error::DimensionMismatch {
                detail: format!("p^n overflows for p={p}, n={n}"),
            });
        };
        let period = (2 * (pn - 1)) as u32;
        Ok(CoefficientContext { field, n, period })
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// L = 2(p^n - 1), the degree of v_n.
    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn reduce_degree(&self, lift: i64) -> u32 {
        lift.rem_euclid(self.period as i64) as u32
    }
}

/// A degree in Z/L, optionally remembering the integer it was reduced from.
///
/// Equality, ordering and hashing use the residue only; the lift is
/// presentation data for reports.
#[derive(Debug, Clone, Copy)]
pub struct Degree {
    residue: u32,
    lift: Option<i64>,
}

impl Degree {
    pub fn new(residue: u32) -> Self {
        Degree {
            residue,
            lift: None,
        }
    }

    pub fn from_lift(ctx: &CoefficientContext, lift: i64) -> Self {
        Degree {
            residue: ctx.reduce_degree(lift),
            lift: Some(lift),
        }
    }

    pub fn zero() -> Self {
        Degree {
            residue: 0,
            lift: Some(0),
        }
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn lift(&self) -> Option<i64> {
        self.lift
    }

    /// Parity of the residue; well-defined because L is even.
    pub fn parity(&self) -> u32 {
        self.residue & 1
    }

    pub fn add(&self, other: &Degree, ctx: &CoefficientContext) -> Degree {
        Degree {
            residue: (self.residue + other.residue) % ctx.period(),
            lift: match (self.lift, other.lift) {
                (Some(a), Some(b)) => a.checked_add(b),
                _ => None,
            },
        }
    }

    pub fn neg(&self, ctx: &CoefficientContext) -> Degree {
        Degree {
            residue: (ctx.period() - self.residue % ctx.period()) % ctx.period(),
            lift: self.lift.map(|a| -a),
        }
    }

    pub fn scaled(&self, k: u32, ctx: &CoefficientContext) -> Degree {
        Degree {
            residue: ((self.residue as u64 * k as u64) % ctx.period() as u64) as u32,
            lift: self.lift.and_then(|a| a.checked_mul(k as i64)),
        }
    }
}

impl PartialEq for Degree {
    fn eq(&self, other: &Self) -> bool {
        self.residue == other.residue
    }
}
impl Eq for Degree {}
impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Degree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.residue.cmp(&other.residue)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lift {
            Some(l) if l != self.residue as i64 => write!(f, "{} ({})", l, self.residue),
            _ => write!(f, "{}", self.residue),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub label: String,
    pub degree: Degree,
}

/// A finite-dimensional Z/L-graded F_p vector space with an ordered,
/// labeled basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSpace {
    ctx: CoefficientContext,
    basis: Vec<BasisElem>,
}

impl GradedSpace {
    /// The `make_space` constructor: labels must be distinct.
    pub fn new(ctx: CoefficientContext, basis: Vec<(String, Degree)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for (label, _) in &basis {
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        Ok(GradedSpace {
            ctx,
            basis: basis
                .into_iter()
                .map(|(label, degree)| BasisElem { label, degree })
                .collect(),
        })
    }

    pub fn ctx(&self) -> &CoefficientContext {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> &Degree {
        &self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    /// Sorted degree residues with multiplicity.
    pub fn degree_multiset(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.basis.iter().map(|b| b.degree.residue()).collect();
        v.sort_unstable();
        v
    }

    /// Basis indices grouped by degree residue, in residue order.
    pub fn strata(&self) -> BTreeMap<u32, Vec<usize>> {
        let mut map: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            map.entry(b.degree.residue()).or_default().push(i);
        }
        map
    }

    /// Tensor product: basis pairs, degrees add in Z/L.
    pub fn tensor(&self, other: &GradedSpace) -> Result<GradedSpace> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut basis = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.basis {
            for b in &other.basis {
                basis.push(BasisElem {
                    label: format!("{}\u{2297}{}", a.label, b.label),
                    degree: a.degree.add(&b.degree, &self.ctx),
                });
            }
        }
        Ok(GradedSpace {
            ctx: self.ctx,
            basis,
        })
    }

    /// Index of the pair (i, j) in the tensor basis.
    pub fn tensor_index(&self, other: &GradedSpace, i: usize, j: usize) -> usize {
        i * other.rank() + j
    }

    /// Dual space: dual basis, degrees negated in Z/L.
    pub fn dual(&self) -> GradedSpace {
        GradedSpace {
            ctx: self.ctx,
            basis: self
                .basis
                .iter()
                .map(|b| BasisElem {
                    label: format!("{}*", b.label),
                    degree: b.degree.neg(&self.ctx),
                })
                .collect(),
        }
    }

    /// Rank-one space in degree 0 (the unit object).
    pub fn unit(ctx: CoefficientContext) -> GradedSpace {
        GradedSpace {
            ctx,
            basis: vec![BasisElem {
                label: "1".to_string(),
                degree: Degree::zero(),
            }],
        }
    }

    /// Same rank and degree residues position by position.
    pub fn degrees_agree(&self, other: &GradedSpace) -> bool {
        self.ctx == other.ctx
            && self.rank() == other.rank()
            && self
                .basis
                .iter()
                .zip(&other.basis)
                .all(|(a, b)| a.degree == b.degree)
    }
}

/// A degree-homogeneous linear map between graded spaces.
///
/// The matrix is target-rank x source-rank; entry (i, j) may be nonzero only
/// when deg(target_i) = deg(source_j) + shift in Z/L.
#[derive(Debug, Clone)]
pub struct GradedMap {
    source: GradedSpace,
    target: GradedSpace,
    shift: Degree,
    mat: FpMat,
}

impl GradedMap {
    pub fn new(
        source: GradedSpace,
        target: GradedSpace,
        shift: Degree,
        mat: FpMat,
    ) -> Result<Self> {
        if source.ctx != target.ctx {
            return Err(Error::ContextMismatch);
        }
        if mat.rows() != target.rank() || mat.cols() != source.rank() {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "matrix {}x{} for map of rank {} -> {}",
                    mat.rows(),
                    mat.cols(),
                    source.rank(),
                    target.rank()
                ),
            });
        }
        let ctx = source.ctx;
        for i in 0..mat.rows() {
            for j in 0..mat.cols() {
                if mat.get(i, j) != 0 {
                    let expect = source.degree(j).add(&shift, &ctx);
                    if target.degree(i) != &expect {
                        return Err(Error::InhomogeneousEntry { row: i, col: j });
                    }
                }
            }
        }
        Ok(GradedMap {
            source,
            target,
            shift,
            mat,
        })
    }

    pub fn zero(source: GradedSpace, target: GradedSpace, shift: Degree) -> Result<Self> {
        let mat = FpMat::zero(target.rank(), source.rank());
        GradedMap::new(source, target, shift, mat)
    }

    pub fn identity(space: &GradedSpace) -> Self {
        GradedMap {
            source: space.clone(),
            target: space.clone(),
            shift: Degree::zero(),
            mat: FpMat::identity(space.rank()),
        }
    }

    pub fn source(&self) -> &GradedSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedSpace {
        &self.target
    }

    pub fn shift(&self) -> &Degree {
        &self.shift
    }

    pub fn matrix(&self) -> &FpMat {
        &self.mat
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        self.mat.mul_vec(self.source.ctx.field(), x)
    }

    pub fn rank(&self) -> usize {
        self.mat.rank(self.source.ctx.field())
    }

    /// g after f (self is applied first).
    pub fn then(&self, g: &GradedMap) -> Result<GradedMap> {
        if !self.target.degrees_agree(&g.source) {
            return Err(Error::DimensionMismatch {
                detail: "composition target/source mismatch".into(),
            });
        }
        let mat = g.mat.matmul(self.source.ctx.field(), &self.mat);
        GradedMap::new(
            self.source.clone(),
            g.target.clone(),
            self.shift.add(&g.shift, &self.source.ctx),
            mat,
        )
    }

    /// Kernel as a graded subspace together with its inclusion map.
    ///
    /// Computed stratum by stratum so the returned basis is homogeneous and
    /// RREF-canonical; labels are `k0`, `k1`, ... in degree order.
    pub fn kernel(&self) -> (GradedSpace, GradedMap) {
        let ctx = self.source.ctx;
        let f = ctx.field();
        let mut vectors: Vec<(Degree, Vec<u32>)> = Vec::new();
        for (residue, cols) in self.source.strata() {
            // rows of the target in the shifted stratum
            let target_res = (residue + self.shift.residue()) % ctx.period();
            let rows: Vec<usize> = (0..self.target.rank())
                .filter(|&i| self.target.degree(i).residue() == target_res)
                .collect();
            let mut sub = FpMat::zero(rows.len(), cols.len());
            for (r, &ri) in rows.iter().enumerate() {
                for (c, &cj) in cols.iter().enumerate() {
                    sub.set(r, c, self.mat.get(ri, cj));
                }
            }
            for k in sub.kernel(f) {
                let mut full = vec![0u32; self.source.rank()];
                for (c, &cj) in cols.iter().enumerate() {
                    full[cj] = k[c];
                }
                vectors.push((*self.source.degree(cols[0]), full));
            }
        }
        let basis: Vec<(String, Degree)> = vectors
            .iter()
            .enumerate()
            .map(|(i, (d, _))| (format!("k{i}"), *d))
            .collect();
        let space = GradedSpace::new(ctx, basis).expect("kernel labels are distinct");
        let mut mat = FpMat::zero(self.source.rank(), vectors.len());
        for (j, (_, v)) in vectors.iter().enumerate() {
            for (i, &x) in v.iter().enumerate() {
                mat.set(i, j, x);
            }
        }
        let incl = GradedMap::new(space.clone(), self.source.clone(), Degree::zero(), mat)
            .expect("kernel basis is homogeneous");
        (space, incl)
    }

    /// Tensor product of maps with the Koszul sign rule:
    /// (f (x) g)(v (x) w) = (-1)^{|g| |v|} f(v) (x) g(w).
    pub fn tensor(&self, g: &GradedMap) -> Result<GradedMap> {
        let source = self.source.tensor(&g.source)?;
        let target = self.target.tensor(&g.target)?;
        let ctx = self.source.ctx;
        let f = ctx.field();
        let mut mat = FpMat::zero(target.rank(), source.rank());
        let g_parity = g.shift.parity();
        for j in 0..self.source.rank() {
            let sign_flip = g_parity == 1 && self.source.degree(j).parity() == 1;
            for l in 0..g.source.rank() {
                let col = self.source.tensor_index(&g.source, j, l);
                for i in 0..self.target.rank() {
                    let a = self.mat.get(i, j);
                    if a == 0 {
                        continue;
                    }
                    for k in 0..g.target.rank() {
                        let b = g.mat.get(k, l);
                        if b == 0 {
                            continue;
                        }
                        let row = self.target.tensor_index(&g.target, i, k);
                        let mut v = f.mul(a, b);
                        if sign_flip {
                            v = f.neg(v);
                        }
                        mat.set(row, col, v);
                    }
                }
            }
        }
        GradedMap::new(source, target, self.shift.add(&g.shift, &ctx), mat)
    }

    /// Dual map with the Koszul sign: (f* phi)(v) = (-1)^{|f||phi|} phi(f v).
    pub fn dual(&self) -> GradedMap {
        let ctx = self.source.ctx;
        let f = ctx.field();
        let source = self.target.dual();
        let target = self.source.dual();
        let mut mat = FpMat::zero(target.rank(), source.rank());
        let f_parity = self.shift.parity();
        for i in 0..self.target.rank() {
            // phi = target_i^*, of parity equal to |target_i| (L is even)
            let sign_flip = f_parity == 1 && self.target.degree(i).parity() == 1;
            for j in 0..self.source.rank() {
                let a = self.mat.get(i, j);
                if a == 0 {
                    continue;
                }
                let v = if sign_flip { f.neg(a) } else { a };
                mat.set(j, i, v);
            }
        }
        GradedMap::new(source, target, self.shift, mat).expect("dual map is homogeneous")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx22() -> CoefficientContext {
        CoefficientContext::new(2, 2).unwrap()
    }

    #[test]
    fn context_invariants() {
        let c = ctx22();
        assert_eq!(c.period(), 6);
        assert_eq!(CoefficientContext::new(3, 2).unwrap().period(), 16);
        assert_eq!(CoefficientContext::new(5, 3).unwrap().period(), 248);
        assert!(CoefficientContext::new(4, 1).is_err());
        assert!(CoefficientContext::new(2, 0).is_err());
    }

    #[test]
    fn make_space_examples() {
        let c = ctx22();
        // rank-1 space in degree 0
        let unit = GradedSpace::new(c, vec![("1".into(), Degree::zero())]).unwrap();
        assert_eq!(unit.rank(), 1);

        // basis a^m with deg 4m mod 6 for m = 0..4
        let degs: Vec<u32> = (0..4)
            .map(|m| Degree::from_lift(&c, 4 * m).residue())
            .collect();
        assert_eq!(degs, vec![0, 4, 2, 0]);
        let sp = GradedSpace::new(
            c,
            (0..4)
                .map(|m| (format!("a^{m}"), Degree::from_lift(&c, 4 * m)))
                .collect(),
        )
        .unwrap();
        assert_eq!(sp.rank(), 4);

        // empty space
        let zero = GradedSpace::new(c, vec![]).unwrap();
        assert_eq!(zero.rank(), 0);

        // duplicate label is an error
        let dup = GradedSpace::new(
            c,
            vec![("x".into(), Degree::zero()), ("x".into(), Degree::zero())],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn degree_arithmetic_uses_residue() {
        let c = ctx22();
        let d1 = Degree::from_lift(&c, 8);
        let d2 = Degree::from_lift(&c, 2);
        assert_eq!(d1, d2); // both residue 2
        assert_eq!(d1.neg(&c).residue(), 4);
        assert_eq!(Degree::zero().neg(&c).residue(), 0);
        assert_eq!(d1.add(&d2, &c).residue(), 4);
        assert_eq!(d1.add(&d2, &c).lift(), Some(10));
    }

    #[test]
    fn dual_degrees_negate() {
        let c = ctx22();
        let sp = GradedSpace::new(
            c,
            [0i64, 4, 8, 12]
                .iter()
                .enumerate()
                .map(|(i, &d)| (format!("b{i}"), Degree::from_lift(&c, d)))
                .collect(),
        )
        .unwrap();
        let dual = sp.dual();
        let degs: Vec<u32> = dual.basis().iter().map(|b| b.degree.residue()).collect();
        assert_eq!(degs, vec![0, 2, 4, 0]);
        // double dual restores the degrees
        assert!(dual.dual().degrees_agree(&sp));
    }

    #[test]
    fn zero_and_identity_kernels() {
        let c = ctx22();
        let sp = GradedSpace::new(
            c,
            (0..3)
                .map(|i| (format!("b{i}"), Degree::from_lift(&c, 2 * i)))
                .collect(),
        )
        .unwrap();
        let zero = GradedMap::zero(sp.clone(), sp.clone(), Degree::zero()).unwrap();
        assert_eq!(zero.kernel().0.rank(), 3);
        let id = GradedMap::identity(&sp);
        assert_eq!(id.kernel().0.rank(), 0);
    }

    #[test]
    fn tensor_unit_and_ranks() {
        let c = ctx22();
        let v = GradedSpace::new(
            c,
            (0..3)
                .map(|i| (format!("v{i}"), Degree::from_lift(&c, 2 * i)))
                .collect(),
        )
        .unwrap();
        let unit = GradedSpace::unit(c);
        let vu = v.tensor(&unit).unwrap();
        assert_eq!(vu.rank(), v.rank());
        assert_eq!(vu.degree_multiset(), v.degree_multiset());

        let w = GradedSpace::new(
            c,
            (0..2)
                .map(|i| (format!("w{i}"), Degree::from_lift(&c, 4 * i)))
                .collect(),
        )
        .unwrap();
        assert_eq!(v.tensor(&w).unwrap().rank(), 6);

        // context mismatch
        let other = CoefficientContext::new(3, 1).unwrap();
        let u = GradedSpace::unit(other);
        assert!(v.tensor(&u).is_err());
    }

    #[test]
    fn tensor_associative_on_degrees_and_labels() {
        let c = ctx22();
        let mk = |names: &[(&str, i64)]| {
            GradedSpace::new(
                c,
                names
                    .iter()
                    .map(|(s, d)| (s.to_string(), Degree::from_lift(&c, *d)))
                    .collect(),
            )
            .unwrap()
        };
        let a = mk(&[("a", 0), ("b", 2)]);
        let b = mk(&[("c", 4)]);
        let d = mk(&[("d", 2), ("e", 0)]);
        let left = a.tensor(&b).unwrap().tensor(&d).unwrap();
        let right = a.tensor(&b.tensor(&d).unwrap()).unwrap();
        assert_eq!(left.rank(), right.rank());
        assert_eq!(left.degree_multiset(), right.degree_multiset());
        // the flattened labels coincide, so the canonical isomorphism is the identity
        for i in 0..left.rank() {
            assert_eq!(left.label(i), right.label(i));
        }
    }

    #[test]
    fn koszul_sign_even_degrees_trivial() {
        let c = ctx22();
        let sp = GradedSpace::new(
            c,
            vec![
                ("x".into(), Degree::from_lift(&c, 2)),
                ("y".into(), Degree::from_lift(&c, 4)),
            ],
        )
        .unwrap();
        // f, g: identity maps; tensor has all +1 entries
        let id = GradedMap::identity(&sp);
        let t = id.tensor(&id).unwrap();
        for i in 0..t.matrix().rows() {
            assert_eq!(t.matrix().get(i, i), 1);
        }
    }

    #[test]
    fn koszul_sign_odd_shift_odd_source() {
        // At p = 3, L = 4 (n = 1): odd residues exist. A map of odd shift
        // tensored past an odd-degree source column picks up a sign.
        let c = CoefficientContext::new(3, 1).unwrap();
        let odd = GradedSpace::new(c, vec![("u".into(), Degree::new(1))]).unwrap();
        let even = GradedSpace::new(c, vec![("w".into(), Degree::new(0))]).unwrap();
        let tgt = GradedSpace::new(c, vec![("z".into(), Degree::new(1))]).unwrap();
        let mut m = FpMat::zero(1, 1);
        m.set(0, 0, 1);
        // g: even -> tgt with shift 1 (odd)
        let g = GradedMap::new(even.clone(), tgt.clone(), Degree::new(1), m.clone()).unwrap();
        let id_odd = GradedMap::identity(&odd);
        let t = id_odd.tensor(&g).unwrap();
        // (1 (x) g)(u (x) w) = (-1)^{1*1} u (x) z = -u (x) z = 2 u (x) z mod 3
        assert_eq!(t.matrix().get(0, 0), 2);
    }

    #[test]
    fn dual_map_is_transpose_for_even() {
        let c = ctx22();
        let sp = GradedSpace::new(
            c,
            vec![
                ("x".into(), Degree::from_lift(&c, 0)),
                ("y".into(), Degree::from_lift(&c, 2)),
            ],
        )
        .unwrap();
        let mut m = FpMat::zero(2, 2);
        m.set(1, 0, 1); // x -> y, shift 2
        let f = GradedMap::new(sp.clone(), sp.clone(), Degree::from_lift(&c, 2), m).unwrap();
        let fd = f.dual();
        // transpose: y* -> x*
        assert_eq!(fd.matrix().get(0, 1), 1);
        // double dual equals the original matrix
        let fdd = fd.dual();
        assert_eq!(fdd.matrix(), f.matrix());
    }

    #[test]
    fn rank_nullity() {
        let c = ctx22();
        let sp = GradedSpace::new(
            c,
            (0..4)
                .map(|i| (format!("b{i}"), Degree::from_lift(&c, 2 * i)))
                .collect(),
        )
        .unwrap();
        let mut m = FpMat::zero(4, 4);
        m.set(1, 0, 1); // b0 -> b1
        m.set(2, 1, 1); // b1 -> b2
        let f = GradedMap::new(sp.clone(), sp, Degree::from_lift(&c, 2), m).unwrap();
        let (ker, incl) = f.kernel();
        assert_eq!(ker.rank() + f.rank(), 4);
        // inclusion composed with f is zero
        let comp = incl.then(&f).unwrap();
        assert!(comp.matrix().is_zero());
    }
}
