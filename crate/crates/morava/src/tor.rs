//! Tor over a graded algebra via the normalized bar complex
//! C_s = Abar^{(x)s} (x) M, where Abar is the augmentation ideal.
//!
//! The differential preserves the total degree residue, so every rank is
//! computed stratum by stratum. Ranks of the differentials are accumulated
//! by streaming columns into an incremental echelon with an early exit at
//! the a-priori bound rank(d_s) <= dim ker(d_{s-1}); columns are visited in
//! a deterministic shuffled order so the bound is typically reached early.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{augmentation_ideal, GradedAlgebra, LeftModule};
use crate::error::{Error, Result};
use crate::fp::{sparse, Echelon, FpMat, SparseVec};

/// Default budget for rank(A)^{s_max} * rank(M).
pub const DEFAULT_TOR_BUDGET: u128 = 262_144;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorRow {
    pub s: u32,
    pub rank: usize,
    /// Degree residues of a homogeneous basis, sorted.
    pub degrees: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorTable {
    pub rows: Vec<TorRow>,
}

impl TorTable {
    pub fn rank(&self, s: u32) -> Option<usize> {
        self.rows.iter().find(|r| r.s == s).map(|r| r.rank)
    }

    /// True when Tor_s = 0 for all 1 <= s <= s_max.
    pub fn vanishes_above_zero(&self) -> bool {
        self.rows.iter().filter(|r| r.s >= 1).all(|r| r.rank == 0)
    }
}

/// Express homogeneous elements of A in the coordinates of a fixed column
/// basis, using one precomputed row reduction.
struct CoordSolver {
    rref: FpMat,
    transform: FpMat,
    pivots: Vec<usize>,
}

impl CoordSolver {
    fn new(f: &crate::fp::PrimeField, columns: &[SparseVec], ambient: usize) -> CoordSolver {
        let nb = columns.len();
        let mut aug = FpMat::zero(ambient, nb + ambient);
        for (j, col) in columns.iter().enumerate() {
            for &(i, c) in col {
                aug.set(i, j, c);
            }
        }
        for i in 0..ambient {
            aug.set(i, nb + i, 1);
        }
        let all_pivots = aug.rref(f);
        let pivots: Vec<usize> = all_pivots.into_iter().filter(|&c| c < nb).collect();
        let mut rref = FpMat::zero(ambient, nb);
        let mut transform = FpMat::zero(ambient, ambient);
        for i in 0..ambient {
            for j in 0..nb {
                rref.set(i, j, aug.get(i, j));
            }
            for j in 0..ambient {
                transform.set(i, j, aug.get(i, nb + j));
            }
        }
        CoordSolver {
            rref,
            transform,
            pivots,
        }
    }

    fn solve(&self, f: &crate::fp::PrimeField, rhs: &SparseVec) -> Option<Vec<u32>> {
        let ambient = self.transform.rows();
        let mut y = vec![0u32; ambient];
        for &(i, c) in rhs {
            for (r, slot) in y.iter_mut().enumerate() {
                let t = self.transform.get(r, i);
                if t != 0 {
                    *slot = f.add(*slot, f.mul(t, c));
                }
            }
        }
        let nb = self.rref.cols();
        let mut coords = vec![0u32; nb];
        for (row, &col) in self.pivots.iter().enumerate() {
            coords[col] = y[row];
        }
        // consistency: rows without a pivot in the basis columns must vanish
        for (row, &val) in y.iter().enumerate().skip(self.pivots.len()) {
            if val != 0 && (0..nb).all(|j| self.rref.get(row, j) == 0) {
                return None;
            }
        }
        Some(coords)
    }
}

struct BarComplex<'a> {
    a: &'a GradedAlgebra,
    nb: usize,
    rm: usize,
    /// products y_i y_j in ideal coordinates
    bar_mul: Vec<SparseVec>,
    /// actions y_i . m_j in module coordinates
    bar_act: Vec<SparseVec>,
    ideg: Vec<u32>,
    iparity: Vec<u32>,
    mdeg: Vec<u32>,
    period: u32,
}

impl<'a> BarComplex<'a> {
    fn new(a: &'a GradedAlgebra, m: &'a LeftModule) -> Result<BarComplex<'a>> {
        let f = a.ctx().field();
        let ideal = augmentation_ideal(a)?;
        let nb = ideal.rank();
        let rm = m.rank();
        let solver = CoordSolver::new(f, ideal.basis(), a.rank());

        let mut bar_mul = vec![SparseVec::new(); nb * nb];
        for i in 0..nb {
            for j in 0..nb {
                let prod = a.mul_elements(&ideal.basis()[i], &ideal.basis()[j]);
                let coords = solver.solve(f, &prod).ok_or_else(|| Error::AlgebraCheck {
                    reason: "product of augmentation-ideal elements left the ideal".into(),
                })?;
                bar_mul[i * nb + j] = sparse::from_dense(&coords);
            }
        }
        let mut bar_act = vec![SparseVec::new(); nb * rm];
        for i in 0..nb {
            for j in 0..rm {
                bar_act[i * rm + j] = m.act(a, &ideal.basis()[i], &vec![(j, 1)]);
            }
        }
        Ok(BarComplex {
            a,
            nb,
            rm,
            bar_mul,
            bar_act,
            ideg: ideal.degrees().iter().map(|d| d.residue()).collect(),
            iparity: ideal.degrees().iter().map(|d| d.parity()).collect(),
            mdeg: (0..rm)
                .map(|j| m.space().degree(j).residue())
                .collect(),
            period: a.ctx().period(),
        })
    }

    fn dims(&self, s: u32) -> BTreeMap<u32, usize> {
        let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
        for &d in &self.mdeg {
            *hist.entry(d).or_insert(0) += 1;
        }
        let ihist: BTreeMap<u32, usize> = {
            let mut h = BTreeMap::new();
            for &d in &self.ideg {
                *h.entry(d).or_insert(0) += 1;
            }
            h
        };
        for _ in 0..s {
            let mut next: BTreeMap<u32, usize> = BTreeMap::new();
            for (&di, &ci) in &ihist {
                for (&dm, &cm) in &hist {
                    *next.entry((di + dm) % self.period).or_insert(0) += ci * cm;
                }
            }
            hist = next;
        }
        hist
    }

    fn decode(&self, s: u32, idx: u64) -> (Vec<usize>, usize) {
        let mm = (idx % self.rm as u64) as usize;
        let mut rest = idx / self.rm as u64;
        let mut ks = vec![0usize; s as usize];
        for r in (0..s as usize).rev() {
            ks[r] = (rest % self.nb as u64) as usize;
            rest /= self.nb as u64;
        }
        (ks, mm)
    }

    fn encode(&self, ks: &[usize], mm: usize) -> u64 {
        let mut idx = 0u64;
        for &k in ks {
            idx = idx * self.nb as u64 + k as u64;
        }
        idx * self.rm as u64 + mm as u64
    }

    fn tuple_count(&self, s: u32) -> u128 {
        (self.nb as u128).pow(s) * self.rm as u128
    }

    fn tuple_degree(&self, ks: &[usize], mm: usize) -> u32 {
        let mut d = self.mdeg[mm];
        for &k in ks {
            d = (d + self.ideg[k]) % self.period;
        }
        d
    }

    fn buckets(&self, s: u32) -> BTreeMap<u32, Vec<u64>> {
        let mut out: BTreeMap<u32, Vec<u64>> = BTreeMap::new();
        let total = self.tuple_count(s) as u64;
        for idx in 0..total {
            let (ks, mm) = self.decode(s, idx);
            out.entry(self.tuple_degree(&ks, mm)).or_default().push(idx);
        }
        out
    }

    /// Sparse column of d_s at the source tuple.
    fn column(&self, ks: &[usize], mm: usize) -> Vec<(u64, u32)> {
        let f = self.a.ctx().field();
        let s = ks.len();
        let mut acc: HashMap<u64, u32> = HashMap::new();
        let mut prefix_parity = 0u32;
        for i in 1..=s {
            // face i: merge (i-1, i) for i < s, act on the module for i = s
            let sign_exp = (i as u32 - 1) + prefix_parity;
            let negate = sign_exp % 2 == 1;
            if i < s {
                let entries = &self.bar_mul[ks[i - 1] * self.nb + ks[i]];
                for &(t, c) in entries {
                    let mut target: Vec<usize> = Vec::with_capacity(s - 1);
                    target.extend_from_slice(&ks[..i - 1]);
                    target.push(t);
                    target.extend_from_slice(&ks[i + 1..]);
                    let key = self.encode(&target, mm);
                    let v = if negate { f.neg(c) } else { c };
                    let e = acc.entry(key).or_insert(0);
                    *e = f.add(*e, v);
                }
            } else {
                let entries = &self.bar_act[ks[s - 1] * self.rm + mm];
                for &(m2, c) in entries {
                    let key = self.encode(&ks[..s - 1], m2);
                    let v = if negate { f.neg(c) } else { c };
                    let e = acc.entry(key).or_insert(0);
                    *e = f.add(*e, v);
                }
            }
            prefix_parity += self.iparity[ks[i - 1]];
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Ranks of d_s per stratum, given the ranks of d_{s-1} (for the early
    /// exit bound) and the bucketed source tuples.
    fn differential_ranks(
        &self,
        s: u32,
        dims_prev: &BTreeMap<u32, usize>,
        ranks_prev: &BTreeMap<u32, usize>,
        buckets_prev: &BTreeMap<u32, Vec<u64>>,
        buckets_cur: &BTreeMap<u32, Vec<u64>>,
    ) -> BTreeMap<u32, usize> {
        let f = self.a.ctx().field();
        let mut out = BTreeMap::new();
        for (&res, sources) in buckets_cur {
            let dim_prev = dims_prev.get(&res).copied().unwrap_or(0);
            if dim_prev == 0 {
                out.insert(res, 0);
                continue;
            }
            let bound = dim_prev - ranks_prev.get(&res).copied().unwrap_or(0);
            if bound == 0 {
                out.insert(res, 0);
                continue;
            }
            let index_of: HashMap<u64, usize> = buckets_prev
                .get(&res)
                .map(|v| v.iter().enumerate().map(|(pos, &idx)| (idx, pos)).collect())
                .unwrap_or_default();
            let mut order: Vec<u64> = sources.clone();
            // deterministic xorshift shuffle
            let mut state = 0x51_7c_c1_b7_27_22_0a_95u64 ^ ((s as u64) << 32) ^ res as u64;
            let mut rng = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for i in (1..order.len()).rev() {
                let j = (rng() % (i as u64 + 1)) as usize;
                order.swap(i, j);
            }
            let mut ech = Echelon::new(dim_prev);
            for idx in order {
                let (ks, mm) = self.decode(s, idx);
                let col = self.column(&ks, mm);
                if col.is_empty() {
                    continue;
                }
                let mut dense = vec![0u32; dim_prev];
                for (key, c) in col {
                    dense[index_of[&key]] = c;
                }
                ech.insert(f, dense);
                if ech.rank() == bound {
                    break;
                }
            }
            out.insert(res, ech.rank());
        }
        out
    }
}

/// Homology of the normalized bar complex R (x) Abar^{(x)s} (x) M for
/// 0 <= s <= s_max, reported as ranks and degree multisets.
pub fn tor_bar(
    a: &GradedAlgebra,
    m: &LeftModule,
    s_max: u32,
    budget: u128,
) -> Result<TorTable> {
    let needed = (a.rank() as u128)
        .checked_pow(s_max)
        .and_then(|x| x.checked_mul(m.rank() as u128))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::TorBudgetExceeded { needed, budget });
    }

    if m.rank() == 0 {
        let rows = (0..=s_max)
            .map(|s| TorRow {
                s,
                rank: 0,
                degrees: vec![],
            })
            .collect();
        return Ok(TorTable { rows });
    }

    let bar = BarComplex::new(a, m)?;

    // dims and buckets per homological degree 0..=s_max+1
    let mut dims: Vec<BTreeMap<u32, usize>> = Vec::new();
    let mut buckets: Vec<BTreeMap<u32, Vec<u64>>> = Vec::new();
    for s in 0..=s_max + 1 {
        dims.push(bar.dims(s));
        buckets.push(bar.buckets(s));
    }

    // ranks of d_s for s = 1..=s_max+1
    let mut ranks: Vec<BTreeMap<u32, usize>> = vec![BTreeMap::new()]; // d_0 = 0
    for s in 1..=s_max + 1 {
        let r = bar.differential_ranks(
            s,
            &dims[(s - 1) as usize],
            &ranks[(s - 1) as usize],
            &buckets[(s - 1) as usize],
            &buckets[s as usize],
        );
        ranks.push(r);
    }

    let mut rows = Vec::new();
    for s in 0..=s_max {
        let mut degrees = Vec::new();
        for (&res, &dim) in &dims[s as usize] {
            let rank_in = ranks[s as usize].get(&res).copied().unwrap_or(0);
            let rank_out = ranks[(s + 1) as usize].get(&res).copied().unwrap_or(0);
            let h = dim - rank_in - rank_out;
            for _ in 0..h {
                degrees.push(res);
            }
        }
        degrees.sort_unstable();
        rows.push(TorRow {
            s,
            rank: degrees.len(),
            degrees,
        });
    }
    Ok(TorTable { rows })
}
