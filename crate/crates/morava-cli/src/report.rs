//! Report documents. Serialization is byte-deterministic for a fixed
//! configuration: struct field order is fixed, scalars are canonical
//! residues 0..p-1, and no timing or host data enters the output.

use serde::Serialize;

use morava::{EMAlgebra, EmFamily, GradedAlgebra, InvariantReport, SparseVec};

#[derive(Debug, Clone, Serialize)]
pub struct ContextDoc {
    pub p: u32,
    pub n: u32,
    pub period: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationEntry {
    pub name: String,
    pub degree_lift: i64,
    pub degree_mod: u32,
    pub truncation: u32,
    /// (coefficient, exponent) terms of the relation right-hand side.
    pub relation_rhs: Vec<(u32, u32)>,
}

/// A scalar together with the monomial it multiplies, as an exponent list
/// over the algebra's generators (a bare basis index for table groups).
pub type Term = (u32, Vec<u32>);

#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusDoc {
    pub xi: Vec<Term>,
    pub nondegenerate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorRowDoc {
    pub s: u32,
    pub rank: usize,
    pub degrees: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsDoc {
    pub pi: Vec<Term>,
    pub degree_lift: Option<i64>,
    pub degree_mod: u32,
    pub epsilon_pi: u32,
    pub frobenius: FrobeniusDoc,
    pub tor: Option<Vec<TorRowDoc>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema: &'static str,
    pub context: ContextDoc,
    pub presentation: Vec<PresentationEntry>,
    pub rank: usize,
    pub invariants: InvariantsDoc,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub timing_ms: Option<u64>,
}

/// Express a sparse element as serialized terms, via the monomial metadata
/// when present, falling back to bare basis indices.
pub fn terms_of(a: &GradedAlgebra, v: &SparseVec) -> Vec<Term> {
    match a.monomials() {
        Some(m) => v
            .iter()
            .map(|&(i, c)| (c, m.exponents[i].clone()))
            .collect(),
        None => v.iter().map(|&(i, c)| (c, vec![i as u32])).collect(),
    }
}

pub fn context_doc(a: &GradedAlgebra) -> ContextDoc {
    ContextDoc {
        p: a.ctx().p(),
        n: a.ctx().n(),
        period: a.ctx().period(),
    }
}

/// Presentation echo for an EM algebra.
pub fn em_presentation(em: &EMAlgebra) -> Vec<PresentationEntry> {
    let ctx = em.algebra.ctx();
    let p = em.p;
    match em.family {
        EmFamily::Point => vec![],
        EmFamily::Group => vec![PresentationEntry {
            name: "g".into(),
            degree_lift: 0,
            degree_mod: 0,
            truncation: p,
            relation_rhs: vec![(1, 0)], // g^p = 1
        }],
        EmFamily::TopCase | EmFamily::Truncated => em
            .generators
            .iter()
            .map(|g| {
                let relation_rhs = if em.family == EmFamily::TopCase {
                    // a^p = (-1)^{n+1} a
                    let coeff = if em.n.is_multiple_of(2) {
                        ctx.field().neg(1)
                    } else {
                        1
                    };
                    vec![(coeff, 1)]
                } else {
                    vec![]
                };
                PresentationEntry {
                    name: g.name.clone(),
                    degree_lift: g.degree_lift,
                    degree_mod: ctx.reduce_degree(g.degree_lift),
                    truncation: g.truncation,
                    relation_rhs,
                }
            })
            .collect(),
    }
}

/// Cyclic group echo: g^m = 1.
pub fn cyclic_presentation(m: u32) -> Vec<PresentationEntry> {
    vec![PresentationEntry {
        name: "g".into(),
        degree_lift: 0,
        degree_mod: 0,
        truncation: m,
        relation_rhs: vec![(1, 0)],
    }]
}

pub fn invariants_doc(a: &GradedAlgebra, rep: &InvariantReport) -> InvariantsDoc {
    InvariantsDoc {
        pi: terms_of(a, &rep.pi),
        degree_lift: rep.degree.lift(),
        degree_mod: rep.degree.residue(),
        epsilon_pi: rep.epsilon_pi,
        frobenius: FrobeniusDoc {
            xi: terms_of(
                a,
                &rep.frobenius
                    .xi
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i, c))
                    .collect(),
            ),
            nondegenerate: true,
        },
        tor: rep.tor.as_ref().map(|t| {
            t.rows
                .iter()
                .map(|r| TorRowDoc {
                    s: r.s,
                    rank: r.rank,
                    degrees: r.degrees.clone(),
                })
                .collect()
        }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    pub rank: Option<usize>,
    pub degree_lift: Option<i64>,
    pub degree_mod: Option<u32>,
    pub epsilon_pi: Option<u32>,
    pub frobenius_ok: Option<bool>,
    /// Tor ranks for s = 1..=s_max; None when Tor was skipped.
    pub tor: Option<Vec<usize>>,
    pub error: Option<SweepError>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepError {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepDocument {
    pub schema: &'static str,
    pub s_max: u32,
    pub rows: Vec<SweepRow>,
}
