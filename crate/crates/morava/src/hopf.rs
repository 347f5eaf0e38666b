//! Coalgebra and Hopf structure where available, plus Frobenius
//! certificates: a homogeneous functional xi whose bilinear form
//! (x, y) -> xi(xy) is nondegenerate, exhibiting A as a suspension of its
//! own dual as a left module.

use crate::algebra::{augmentation_ideal, left_annihilator, CheckLevel, GradedAlgebra, GroupTable};
use crate::error::{Error, Result};
use crate::fp::{sparse, FpMat, SparseVec};
use crate::graded::{Degree, GradedMap};

/// Coproduct, counit and antipode data on top of a graded algebra. The
/// counit is the algebra's own; psi and chi are degree-0 maps.
#[derive(Debug, Clone)]
pub struct HopfData {
    psi: GradedMap,
    antipode: GradedMap,
}

impl HopfData {
    pub fn coproduct(&self) -> &GradedMap {
        &self.psi
    }

    pub fn antipode(&self) -> &GradedMap {
        &self.antipode
    }
}

#[derive(Debug, Clone)]
pub struct HopfAlgebra {
    algebra: GradedAlgebra,
    hopf: HopfData,
}

impl HopfAlgebra {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn hopf(&self) -> &HopfData {
        &self.hopf
    }
}

fn hopf_err(axiom: &str, element: &str) -> Error {
    Error::HopfAxiom {
        axiom: axiom.to_string(),
        element: element.to_string(),
    }
}

/// Verify the Hopf axioms for (A, psi, chi) and package them.
///
/// Checks coassociativity, counitality, that psi is an algebra map, that chi
/// is an (anti)algebra map, and the conjugation identities
/// mu(chi (x) 1)psi = eta eps = mu(1 (x) chi)psi. On failure the error names
/// the axiom and the basis element where it breaks.
pub fn attach_hopf(algebra: GradedAlgebra, psi: GradedMap, antipode: GradedMap) -> Result<HopfAlgebra> {
    let eps = algebra.counit().ok_or(Error::MissingCounit)?.to_vec();
    let f = *algebra.ctx().field();
    let rank = algebra.rank();
    let space = algebra.space().clone();

    if !psi.source().degrees_agree(&space) || psi.shift().residue() != 0 {
        return Err(hopf_err("coproduct shape", "-"));
    }
    let sq = space.tensor(&space)?;
    if !psi.target().degrees_agree(&sq) {
        return Err(hopf_err("coproduct shape", "-"));
    }
    if !antipode.source().degrees_agree(&space)
        || !antipode.target().degrees_agree(&space)
        || antipode.shift().residue() != 0
    {
        return Err(hopf_err("antipode shape", "-"));
    }

    // coassociativity: (psi (x) 1) psi = (1 (x) psi) psi, comparable entrywise
    // because the flattened tensor index is associative.
    let id = GradedMap::identity(&space);
    let left = psi.then(&psi.tensor(&id)?)?;
    let right = psi.then(&id.tensor(&psi)?)?;
    if left.matrix() != right.matrix() {
        let col = (0..rank)
            .find(|&j| (0..left.matrix().rows()).any(|i| left.matrix().get(i, j) != right.matrix().get(i, j)))
            .unwrap_or(0);
        return Err(hopf_err("coassociativity", space.label(col)));
    }

    // counitality: (eps (x) 1) psi = id = (1 (x) eps) psi
    for j in 0..rank {
        let mut left = vec![0u32; rank];
        let mut right = vec![0u32; rank];
        for i in 0..rank {
            for k in 0..rank {
                let c = psi.matrix().get(i * rank + k, j);
                if c == 0 {
                    continue;
                }
                left[k] = f.add(left[k], f.mul(eps[i], c));
                right[i] = f.add(right[i], f.mul(c, eps[k]));
            }
        }
        let mut e_j = vec![0u32; rank];
        e_j[j] = 1;
        if left != e_j {
            return Err(hopf_err("left counit", space.label(j)));
        }
        if right != e_j {
            return Err(hopf_err("right counit", space.label(j)));
        }
    }

    // psi is an algebra map into A (x) A with Koszul multiplication
    let square = GradedAlgebra::kunneth(&algebra, &algebra, CheckLevel::Fast)?;
    let psi_of = |x: &SparseVec| -> SparseVec {
        let dense = psi.apply(&sparse::to_dense(x, rank));
        sparse::from_dense(&dense)
    };
    let unit_sq = square.unit_vec().clone();
    if psi_of(algebra.unit_vec()) != unit_sq {
        return Err(hopf_err("coproduct preserves unit", "1"));
    }
    for i in 0..rank {
        for j in 0..rank {
            let lhs = psi_of(algebra.mul_basis(i, j));
            let rhs = square.mul_elements(&psi_of(&vec![(i, 1)]), &psi_of(&vec![(j, 1)]));
            if lhs != rhs {
                return Err(hopf_err("coproduct is an algebra map", space.label(i)));
            }
        }
    }

    // chi is an algebra map (commutative case) or anti-map
    let chi_of = |x: &SparseVec| -> SparseVec {
        sparse::from_dense(&antipode.apply(&sparse::to_dense(x, rank)))
    };
    let commutative = {
        let mut comm = true;
        'outer: for i in 0..rank {
            for j in 0..rank {
                let sign_flip = space.degree(i).parity() == 1 && space.degree(j).parity() == 1;
                let ji = if sign_flip {
                    sparse::scale(&f, algebra.mul_basis(j, i), f.neg(1))
                } else {
                    algebra.mul_basis(j, i).clone()
                };
                if algebra.mul_basis(i, j) != &ji {
                    comm = false;
                    break 'outer;
                }
            }
        }
        comm
    };
    if chi_of(algebra.unit_vec()) != *algebra.unit_vec() {
        return Err(hopf_err("antipode preserves unit", "1"));
    }
    for i in 0..rank {
        for j in 0..rank {
            let lhs = chi_of(algebra.mul_basis(i, j));
            let rhs = if commutative {
                algebra.mul_elements(&chi_of(&vec![(i, 1)]), &chi_of(&vec![(j, 1)]))
            } else {
                let sign_flip = space.degree(i).parity() == 1 && space.degree(j).parity() == 1;
                let v = algebra.mul_elements(&chi_of(&vec![(j, 1)]), &chi_of(&vec![(i, 1)]));
                if sign_flip {
                    sparse::scale(&f, &v, f.neg(1))
                } else {
                    v
                }
            };
            if lhs != rhs {
                return Err(hopf_err("antipode is an (anti)algebra map", space.label(i)));
            }
        }
    }

    // conjugation identities: mu(chi (x) 1)psi = eta eps = mu(1 (x) chi)psi
    for (j, &eps_j) in eps.iter().enumerate() {
        let mut left = vec![0u32; rank];
        let mut right = vec![0u32; rank];
        for i in 0..rank {
            for k in 0..rank {
                let c = psi.matrix().get(i * rank + k, j);
                if c == 0 {
                    continue;
                }
                let chi_i = chi_of(&vec![(i, 1)]);
                let l = algebra.mul_elements(&chi_i, &vec![(k, 1)]);
                sparse::add_scaled_into(&f, &mut left, &l, c);
                let chi_k = chi_of(&vec![(k, 1)]);
                let r = algebra.mul_elements(&vec![(i, 1)], &chi_k);
                sparse::add_scaled_into(&f, &mut right, &r, c);
            }
        }
        let mut expected = vec![0u32; rank];
        for &(u, c) in algebra.unit_vec() {
            expected[u] = f.mul(c, eps_j);
        }
        if left != expected {
            return Err(hopf_err("conjugation identity mu(chi (x) 1)psi", space.label(j)));
        }
        if right != expected {
            return Err(hopf_err("conjugation identity mu(1 (x) chi)psi", space.label(j)));
        }
    }

    Ok(HopfAlgebra {
        algebra,
        hopf: HopfData { psi, antipode },
    })
}

/// The standard Hopf structure on a group algebra: psi(g) = g (x) g,
/// chi(g) = g^{-1}.
pub fn group_hopf(
    algebra: GradedAlgebra,
    group: &GroupTable,
) -> Result<HopfAlgebra> {
    let identity = group.validate()?;
    let rank = algebra.rank();
    let space = algebra.space().clone();
    let sq = space.tensor(&space)?;
    let mut psi_mat = FpMat::zero(sq.rank(), rank);
    for g in 0..rank {
        psi_mat.set(g * rank + g, g, 1);
    }
    let psi = GradedMap::new(space.clone(), sq, Degree::zero(), psi_mat)?;
    let mut chi_mat = FpMat::zero(rank, rank);
    for g in 0..rank {
        chi_mat.set(group.inverse_of(g, identity), g, 1);
    }
    let chi = GradedMap::new(space.clone(), space, Degree::zero(), chi_mat)?;
    attach_hopf(algebra, psi, chi)
}

/// Dual Hopf algebra: the product of the dual is psi*, the coproduct is
/// mu*, unit is eps, counit is evaluation at 1, antipode is chi*. The
/// Koszul sign from the pairing (A (x) A)* = A* (x) A* is included.
pub fn dual_hopf(h: &HopfAlgebra) -> Result<HopfAlgebra> {
    let a = h.algebra();
    let ctx = *a.ctx();
    let f = ctx.field();
    let rank = a.rank();
    let dual_space = a.space().dual();

    // pairing sign: (phi (x) psi)(x (x) y) = (-1)^{|psi||x|} phi(x) psi(y)
    let pair_sign = |i: usize, j: usize| -> bool {
        // functional slot j against element slot i
        a.space().degree(j).parity() == 1 && a.space().degree(i).parity() == 1
    };

    // product on the dual from the coproduct
    let psi = h.hopf().coproduct();
    let mut mul = vec![SparseVec::new(); rank * rank];
    for i in 0..rank {
        for j in 0..rank {
            let mut out = SparseVec::new();
            for k in 0..rank {
                // coefficient of (b_i (x) b_j) in psi(b_k)
                let c = psi.matrix().get(i * rank + j, k);
                if c != 0 {
                    let v = if pair_sign(i, j) { f.neg(c) } else { c };
                    out.push((k, v));
                }
            }
            mul[i * rank + j] = out;
        }
    }

    // unit of the dual: eps as an element of A*
    let eps = a.counit().ok_or(Error::MissingCounit)?;
    let unit: SparseVec = sparse::from_dense(eps);

    // counit of the dual: evaluation at 1
    let unit_vec = sparse::to_dense(a.unit_vec(), rank);
    let counit = Some(unit_vec.clone());

    // graded commutativity of the dual table (cocommutativity of psi)
    let gc = {
        let mut ok = true;
        'outer: for i in 0..rank {
            for j in 0..rank {
                let sign_flip =
                    a.space().degree(i).parity() == 1 && a.space().degree(j).parity() == 1;
                let ji = if sign_flip {
                    sparse::scale(f, &mul[j * rank + i], f.neg(1))
                } else {
                    mul[j * rank + i].clone()
                };
                if mul[i * rank + j] != ji {
                    ok = false;
                    break 'outer;
                }
            }
        }
        ok
    };

    let dual_algebra = GradedAlgebra::from_parts(
        dual_space.clone(),
        unit,
        mul,
        counit,
        gc,
        None,
        CheckLevel::Full,
    )?;

    // coproduct of the dual: mu*, with the same pairing sign
    let sq = dual_space.tensor(&dual_space)?;
    let mut psi_mat = FpMat::zero(sq.rank(), rank);
    for i in 0..rank {
        for j in 0..rank {
            for &(k, c) in a.mul_basis(i, j) {
                let v = if pair_sign(i, j) { f.neg(c) } else { c };
                psi_mat.set(i * rank + j, k, f.add(psi_mat.get(i * rank + j, k), v));
            }
        }
    }
    let dual_psi = GradedMap::new(dual_space.clone(), sq, Degree::zero(), psi_mat)?;
    let dual_chi = {
        let chi = h.hopf().antipode();
        let mut m = FpMat::zero(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                m.set(j, i, chi.matrix().get(i, j));
            }
        }
        GradedMap::new(dual_space.clone(), dual_space, Degree::zero(), m)?
    };

    attach_hopf(dual_algebra, dual_psi, dual_chi)
}

/// A Frobenius certificate: a homogeneous functional xi with nondegenerate
/// form B(x, y) = xi(xy), the degree d of the annihilator generator, and the
/// induced left-module isomorphism A -> Sigma^d A*.
#[derive(Debug, Clone)]
pub struct FrobeniusCertificate {
    pub degree: Degree,
    /// xi in dual-basis coordinates.
    pub xi: Vec<u32>,
    /// form[i][j] = xi(b_i b_j), verified nondegenerate.
    pub form: FpMat,
    /// x -> xi(- * x), an isomorphism A -> Sigma^d A* of left modules.
    pub iso: GradedMap,
}

impl FrobeniusCertificate {
    pub fn verify(&self, a: &GradedAlgebra) -> Result<()> {
        if self.form.rank(a.ctx().field()) != a.rank() {
            return Err(Error::NotFrobenius);
        }
        Ok(())
    }
}

/// Default cap on the rank of a degree component for the exhaustive
/// functional search.
pub const FROBENIUS_SEARCH_CAP: usize = 6;

fn certificate_from_xi(
    a: &GradedAlgebra,
    xi: &[u32],
    degree: Degree,
) -> Option<FrobeniusCertificate> {
    let f = a.ctx().field();
    let rank = a.rank();
    let mut form = FpMat::zero(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            let mut acc = 0u32;
            for &(k, c) in a.mul_basis(i, j) {
                acc = f.add(acc, f.mul(c, xi[k]));
            }
            form.set(i, j, acc);
        }
    }
    if form.rank(f) != rank {
        return None;
    }
    // iso: b_j -> sum_i form[i][j] b_i^*, a degree (-d) map into A*
    let dual = a.space().dual();
    let mut mat = FpMat::zero(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            mat.set(i, j, form.get(i, j));
        }
    }
    let iso = GradedMap::new(
        a.space().clone(),
        dual,
        degree.neg(a.ctx()),
        mat,
    )
    .ok()?;
    Some(FrobeniusCertificate {
        degree,
        xi: xi.to_vec(),
        form,
        iso,
    })
}

/// Search for a Frobenius certificate.
///
/// Fast path: xi dual to the leading basis element of the annihilator
/// generator pi. Fallback: exhaustive search over homogeneous functionals
/// supported on pi's degree component (any nondegenerate homogeneous xi must
/// be nonzero on pi, so no other component can work), attempted only when
/// that component has rank at most `cap`.
pub fn frobenius_certificate_with_cap(
    a: &GradedAlgebra,
    cap: usize,
) -> Result<FrobeniusCertificate> {
    let ideal = augmentation_ideal(a)?;
    let (ann, incl) = left_annihilator(a, &ideal);
    if ann.rank() != 1 {
        return Err(Error::AnnihilatorRank { rank: ann.rank() });
    }
    let pi = a.normalize_leading(&sparse::from_dense(&incl.matrix().column(0)));
    let degree = a
        .homogeneous_degree(&pi)
        .expect("annihilator basis is homogeneous");
    let rank = a.rank();

    // fast path
    let lead = pi.last().expect("pi is nonzero").0;
    let mut xi = vec![0u32; rank];
    xi[lead] = 1;
    if let Some(cert) = certificate_from_xi(a, &xi, degree) {
        return Ok(cert);
    }

    // exhaustive search on the component of deg(pi)
    let component: Vec<usize> = (0..rank)
        .filter(|&i| a.space().degree(i).residue() == degree.residue())
        .collect();
    if component.len() > cap {
        return Err(Error::FrobeniusSearchCap {
            component_rank: component.len(),
            cap,
        });
    }
    let p = a.ctx().p() as u64;
    let total = (p as u128).pow(component.len() as u32);
    for code in 1..total {
        let mut xi = vec![0u32; rank];
        let mut c = code;
        for &idx in &component {
            xi[idx] = (c % p as u128) as u32;
            c /= p as u128;
        }
        if let Some(cert) = certificate_from_xi(a, &xi, degree) {
            return Ok(cert);
        }
    }
    Err(Error::NotFrobenius)
}

pub fn frobenius_certificate(a: &GradedAlgebra) -> Result<FrobeniusCertificate> {
    frobenius_certificate_with_cap(a, FROBENIUS_SEARCH_CAP)
}

/// Exhibit dual(A) as a free rank-one left A-module: find a generator m with
/// A . m = dual(A). Uses the Frobenius isomorphism image of 1.
pub fn dual_free_rank_one_generator(a: &GradedAlgebra) -> Result<SparseVec> {
    let cert = frobenius_certificate(a)?;
    let f = a.ctx().field();
    let rank = a.rank();
    // generator = iso(1) = xi itself as an element of A*
    let gen: SparseVec = {
        let unit = sparse::to_dense(a.unit_vec(), rank);
        sparse::from_dense(&cert.iso.apply(&unit))
    };
    // span A . gen and confirm it is everything
    let module = crate::algebra::LeftModule::dual_of(a);
    let mut ech = crate::fp::Echelon::new(rank);
    for i in 0..rank {
        let v = module.act(a, &vec![(i, 1)], &gen);
        ech.insert(f, sparse::to_dense(&v, rank));
    }
    if ech.rank() != rank {
        return Err(Error::NotFrobenius);
    }
    Ok(gen)
}
