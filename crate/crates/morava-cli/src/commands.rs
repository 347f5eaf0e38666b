//! The four batch commands: rw, group, sweep, check.

use std::time::Instant;

use morava::{
    augmentation_ideal, bordism_class, cyclic_group_algebra, degree_additivity_check,
    dual_free_rank_one_generator, frobenius_certificate, group_algebra, group_hopf,
    ideal_generated_by, left_annihilator, module_indecomposables, primitive_generator,
    primitive_generator_em, rw_algebra, CheckLevel, CoefficientContext, EMAlgebra, EmFamily,
    GradedAlgebra, GroupTable, LeftModule, PipelineOptions, SparseVec,
};

use crate::error::{CliError, ErrorCode};
use crate::report::{
    context_doc, cyclic_presentation, em_presentation, invariants_doc, ReportDocument, SweepDocument,
    SweepError, SweepRow,
};

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub s_max: u32,
    pub tor_budget: u128,
    pub rank_budget: u128,
    pub fast: bool,
}

impl PipelineConfig {
    pub fn check_level(&self) -> CheckLevel {
        if self.fast {
            CheckLevel::Fast
        } else {
            CheckLevel::Full
        }
    }

    fn options(&self) -> PipelineOptions {
        PipelineOptions {
            s_max: self.s_max,
            tor_budget: if self.s_max == 0 { 0 } else { self.tor_budget },
        }
    }
}

fn p2_note(em: &EMAlgebra) -> Option<String> {
    if em.p == 2 && matches!(em.family, EmFamily::Truncated | EmFamily::TopCase) {
        Some("p=2: odd-primary presentation family used as stated".to_string())
    } else {
        None
    }
}

/// rw --p P --n N --q Q: construct K(n)_* K(Z/p, q) and run the pipeline.
pub fn cmd_rw(p: u32, n: u32, q: u32, cfg: &PipelineConfig) -> Result<ReportDocument, CliError> {
    let started = Instant::now();
    let ctx = CoefficientContext::new(p, n)?;
    let em = rw_algebra(ctx, q, cfg.check_level())?;
    if em.algebra.rank() as u128 > cfg.rank_budget {
        return Err(CliError::new(
            ErrorCode::BudgetExceeded,
            format!(
                "instance rank {} exceeds the rank budget {}",
                em.algebra.rank(),
                cfg.rank_budget
            ),
        ));
    }
    let rep = morava::compute_invariants(&em.algebra, Some(&em), &cfg.options())?;
    let mut notes: Vec<String> = Vec::new();
    if let Some(n) = p2_note(&em) {
        notes.push(n);
    }
    if cfg.s_max == 0 {
        notes.push("tor skipped: s_max = 0".into());
    } else if let Some(reason) = &rep.tor_skipped {
        notes.push(format!("tor skipped: {reason}"));
    }
    let mut invariants = invariants_doc(&em.algebra, &rep);
    if cfg.s_max == 0 {
        invariants.tor = None;
    }
    Ok(ReportDocument {
        schema: "1",
        context: context_doc(&em.algebra),
        presentation: em_presentation(&em),
        rank: em.algebra.rank(),
        invariants,
        notes,
        timing_ms: Some(started.elapsed().as_millis() as u64),
    })
}

pub enum GroupSpec {
    Cyclic(u32),
    Table(GroupTable),
}

/// group --p P [--n N] (--group-cyclic M | --group-table FILE).
pub fn cmd_group(
    p: u32,
    n: u32,
    spec: &GroupSpec,
    cfg: &PipelineConfig,
) -> Result<ReportDocument, CliError> {
    let started = Instant::now();
    let ctx = CoefficientContext::new(p, n)?;
    let (algebra, presentation) = match spec {
        GroupSpec::Cyclic(m) => {
            if *m == 0 {
                return Err(CliError::new(
                    ErrorCode::InvalidRange,
                    "cyclic order must be >= 1",
                ));
            }
            let a = cyclic_group_algebra(ctx, *m as usize, cfg.check_level())?;
            (a, cyclic_presentation(*m))
        }
        GroupSpec::Table(table) => {
            let a = group_algebra(ctx, table, cfg.check_level())?;
            (a, vec![])
        }
    };
    if algebra.rank() as u128 > cfg.rank_budget {
        return Err(CliError::new(
            ErrorCode::BudgetExceeded,
            format!(
                "group order {} exceeds the rank budget {}",
                algebra.rank(),
                cfg.rank_budget
            ),
        ));
    }
    let rep = morava::compute_invariants(&algebra, None, &cfg.options())?;
    let mut notes = Vec::new();
    if cfg.s_max == 0 {
        notes.push("tor skipped: s_max = 0".into());
    } else if let Some(reason) = &rep.tor_skipped {
        notes.push(format!("tor skipped: {reason}"));
    }
    let mut invariants = invariants_doc(&algebra, &rep);
    if cfg.s_max == 0 {
        invariants.tor = None;
    }
    Ok(ReportDocument {
        schema: "1",
        context: context_doc(&algebra),
        presentation,
        rank: algebra.rank(),
        invariants,
        notes,
        timing_ms: Some(started.elapsed().as_millis() as u64),
    })
}

/// sweep over a (p, n, q) grid; per-row failures become error cells and the
/// sweep continues.
pub fn cmd_sweep(
    p_set: &[u32],
    n_range: &[u32],
    q_range: Option<&[u32]>,
    cfg: &PipelineConfig,
) -> Result<SweepDocument, CliError> {
    if p_set.is_empty() || n_range.is_empty() || q_range.is_some_and(|q| q.is_empty()) {
        return Err(CliError::new(ErrorCode::EmptyGrid, "empty sweep grid"));
    }
    let mut rows = Vec::new();
    for &p in p_set {
        for &n in n_range {
            let qs: Vec<u32> = match q_range {
                Some(qr) => qr.to_vec(),
                None => (1..=n).collect(),
            };
            for q in qs {
                rows.push(sweep_row(p, n, q, cfg));
            }
        }
    }
    if rows.is_empty() {
        return Err(CliError::new(ErrorCode::EmptyGrid, "empty sweep grid"));
    }
    Ok(SweepDocument {
        schema: "1",
        s_max: cfg.s_max,
        rows,
    })
}

fn sweep_row(p: u32, n: u32, q: u32, cfg: &PipelineConfig) -> SweepRow {
    let mut row = SweepRow {
        p,
        n,
        q,
        rank: None,
        degree_lift: None,
        degree_mod: None,
        epsilon_pi: None,
        frobenius_ok: None,
        tor: None,
        error: None,
    };
    let fail = |row: &mut SweepRow, e: CliError| {
        row.error = Some(SweepError {
            code: e.code.as_str(),
            message: e.message,
        });
    };
    let ctx = match CoefficientContext::new(p, n) {
        Ok(c) => c,
        Err(e) => {
            fail(&mut row, e.into());
            return row;
        }
    };
    let em = match rw_algebra(ctx, q, cfg.check_level()) {
        Ok(em) => em,
        Err(e) => {
            fail(&mut row, e.into());
            return row;
        }
    };
    if em.expected_rank() > cfg.rank_budget {
        fail(
            &mut row,
            CliError::new(
                ErrorCode::BudgetExceeded,
                format!(
                    "instance rank {} exceeds the rank budget {}",
                    em.expected_rank(),
                    cfg.rank_budget
                ),
            ),
        );
        return row;
    }
    row.rank = Some(em.algebra.rank());
    let opts = PipelineOptions {
        s_max: cfg.s_max,
        tor_budget: if cfg.s_max == 0 { 0 } else { cfg.tor_budget },
    };
    match morava::compute_invariants(&em.algebra, Some(&em), &opts) {
        Ok(rep) => {
            row.degree_lift = rep.degree.lift();
            row.degree_mod = Some(rep.degree.residue());
            row.epsilon_pi = Some(rep.epsilon_pi);
            row.frobenius_ok = Some(true);
            if cfg.s_max > 0 {
                row.tor = rep.tor.map(|t| {
                    (1..=cfg.s_max)
                        .map(|s| t.rank(s).unwrap_or(0))
                        .collect()
                });
            }
        }
        Err(e) => fail(&mut row, e.into()),
    }
    row
}

/// One named check with its outcome.
pub struct CheckEntry {
    pub name: String,
    pub result: Result<(), String>,
}

pub struct CheckOutcome {
    pub entries: Vec<CheckEntry>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.result.is_ok())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match &e.result {
                Ok(()) => out.push_str(&format!("ok   {}\n", e.name)),
                Err(d) => out.push_str(&format!("FAIL {}: {}\n", e.name, d)),
            }
        }
        let failed = self.entries.iter().filter(|e| e.result.is_err()).count();
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.entries.len(),
            failed
        ));
        out
    }
}

fn binomial(n: u32, q: u32) -> u128 {
    let mut acc: u128 = 1;
    for k in 0..q {
        acc = acc * (n - k) as u128 / (k + 1) as u128;
    }
    acc
}

/// Run the whole invariant/property suite over the default grid
/// (p in {2,3,5}, n in 1..=3, 0 < q <= n, plus cyclic groups of order <= 12
/// and a fixed list of Kunneth pairs).
pub fn cmd_check(cfg: &PipelineConfig) -> CheckOutcome {
    let mut entries = Vec::new();
    let mut push = |name: String, result: Result<(), String>| {
        entries.push(CheckEntry { name, result });
    };

    for p in [2u32, 3, 5] {
        for n in 1..=3u32 {
            for q in 1..=n {
                let tag = format!("rw({p},{n},{q})");
                match check_em_instance(p, n, q, cfg) {
                    Ok(()) => push(tag, Ok(())),
                    Err(d) => push(tag, Err(d)),
                }
            }
        }
        for m in 1..=12u32 {
            let tag = format!("group(Z/{m}, p={p})");
            match check_group_instance(p, m, cfg) {
                Ok(()) => push(tag, Ok(())),
                Err(d) => push(tag, Err(d)),
            }
        }
    }

    // Kunneth additivity on fixed same-context pairs
    let pairs = [
        (2u32, 2u32, 1u32, 1u32),
        (2, 3, 1, 2),
        (3, 2, 1, 2),
        (3, 2, 2, 2),
        (5, 2, 1, 2),
        (3, 3, 1, 3),
    ];
    for (p, n, q1, q2) in pairs {
        let tag = format!("kunneth({p},{n}: q={q1} x q={q2})");
        let result = (|| -> Result<(), String> {
            let ctx = CoefficientContext::new(p, n).map_err(|e| e.to_string())?;
            let a = rw_algebra(ctx, q1, CheckLevel::Fast).map_err(|e| e.to_string())?;
            let b = rw_algebra(ctx, q2, CheckLevel::Fast).map_err(|e| e.to_string())?;
            let rep = degree_additivity_check(&a.algebra, &b.algebra).map_err(|e| e.to_string())?;
            if rep.ok() {
                Ok(())
            } else {
                Err(format!("additivity report: {rep:?}"))
            }
        })();
        push(tag, result);
    }

    CheckOutcome { entries }
}

fn check_em_instance(p: u32, n: u32, q: u32, cfg: &PipelineConfig) -> Result<(), String> {
    let err = |s: String| s;
    let ctx = CoefficientContext::new(p, n).map_err(|e| err(e.to_string()))?;
    let em = rw_algebra(ctx, q, cfg.check_level()).map_err(|e| err(e.to_string()))?;
    let a = &em.algebra;

    // rank formulas
    if a.rank() as u128 != em.expected_rank() {
        return Err(format!("rank {} != expected {}", a.rank(), em.expected_rank()));
    }
    if q == 1 && a.rank() as u128 != (p as u128).pow(n) {
        return Err(format!("rank {} != p^n", a.rank()));
    }
    // diagnostic: rank = p^C(n, q)
    if a.rank() as u128 != (p as u128).pow(binomial(n, q) as u32) {
        return Err(format!("diagnostic rank {} != p^C(n,q)", a.rank()));
    }

    // closed-form primitive and degree vanishing
    let gen = primitive_generator_em(&em).map_err(|e| err(e.to_string()))?;
    if gen.degree.residue() != 0 {
        return Err(format!("degree residue {} != 0", gen.degree.residue()));
    }

    // bordism values per family
    let eps = bordism_class(a).map_err(|e| err(e.to_string()))?;
    let expect_eps = if q < n {
        0
    } else if n.is_multiple_of(2) {
        1
    } else {
        p - 1
    };
    if eps != expect_eps {
        return Err(format!("epsilon {eps} != {expect_eps}"));
    }

    // Frobenius and duality pairing
    let cert = frobenius_certificate(a).map_err(|e| err(e.to_string()))?;
    if cert.degree.residue() != gen.degree.residue() {
        return Err("certificate degree differs from deg(pi)".into());
    }
    cert.verify(a).map_err(|e| err(e.to_string()))?;
    let dual = LeftModule::dual_of(a);
    let (qspace, _) = module_indecomposables(a, &dual).map_err(|e| err(e.to_string()))?;
    if qspace.rank() != 1 {
        return Err(format!("dual indecomposables rank {} != 1", qspace.rank()));
    }
    let minus_d = gen.degree.neg(a.ctx());
    if qspace.degree(0).residue() != minus_d.residue() {
        return Err("dual indecomposables degree != -d".into());
    }

    if !cfg.fast {
        // annihilator closure
        let ideal = augmentation_ideal(a).map_err(|e| err(e.to_string()))?;
        let (ann, incl) = left_annihilator(a, &ideal);
        if ann.rank() != 1 {
            return Err(format!("annihilator rank {} != 1", ann.rank()));
        }
        let gens: Vec<SparseVec> = vec![incl
            .matrix()
            .column(0)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect()];
        let closed = ideal_generated_by(a, &gens).map_err(|e| err(e.to_string()))?;
        closed.verify(a).map_err(|e| err(e.to_string()))?;

        // free rank one dual
        dual_free_rank_one_generator(a).map_err(|e| err(e.to_string()))?;

        // Tor collapse where the budget allows
        if cfg.s_max > 0 {
            match morava::tor_bar(a, &dual, cfg.s_max, cfg.tor_budget) {
                Ok(t) => {
                    if t.rank(0) != Some(1) || !t.vanishes_above_zero() {
                        return Err(format!("tor table does not collapse: {t:?}"));
                    }
                }
                Err(morava::Error::TorBudgetExceeded { .. }) => {}
                Err(e) => return Err(err(e.to_string())),
            }
        }
    }
    Ok(())
}

fn check_group_instance(p: u32, m: u32, cfg: &PipelineConfig) -> Result<(), String> {
    let ctx = CoefficientContext::new(p, 1).map_err(|e| e.to_string())?;
    let a = cyclic_group_algebra(ctx, m as usize, cfg.check_level()).map_err(|e| e.to_string())?;
    let gen = primitive_generator(&a).map_err(|e| e.to_string())?;
    let expect: SparseVec = (0..m as usize).map(|i| (i, 1)).collect();
    if gen.pi != expect {
        return Err("pi != norm element".into());
    }
    let eps = bordism_class(&a).map_err(|e| e.to_string())?;
    if eps != m % p {
        return Err(format!("epsilon(N) = {eps} != |G| mod p = {}", m % p));
    }
    frobenius_certificate(&a).map_err(|e| e.to_string())?;
    if !cfg.fast && m <= 8 {
        let table = GroupTable::cyclic(m as usize);
        let alg = group_algebra(ctx, &table, cfg.check_level()).map_err(|e| e.to_string())?;
        group_hopf(alg, &table).map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Negative-control hook used by tests: the per-algebra axioms check that
/// cmd_check relies on, applied to an arbitrary algebra.
pub fn check_algebra_axioms(a: &GradedAlgebra) -> Result<(), String> {
    a.verify(CheckLevel::Full).map_err(|e| e.to_string())
}
