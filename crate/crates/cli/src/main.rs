//! `hypercl` — command-line frontend for the exact computations in
//! [`hypercl_core`].
//!
//! The subcommands mirror the library layers: `rank` and `boundary` report
//! the divisor atlas of the compactified moduli space, `invariants` the
//! symplectic fixed spaces, `totaro` the spectral model of the configuration
//! space, `certify` replays the independence certificate, and `selftest`
//! runs the full acceptance checklist.
//!
//! Exit codes: `0` on success, `1` when a computed claim fails (a
//! certificate does not certify, a selftest criterion fails, a report's
//! internal cross-check disagrees), `2` for usage and parameter errors.
//!
//! With `--format json` the output for a fixed command line is byte-stable:
//! every map key is emitted in sorted order, rational numbers are printed as
//! exact strings (`"-3/7"`), and no timing or environment data is included.
//! Table output is also deterministic except for the timing fields of
//! `selftest`.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypercl_core::boundary::{self, SymmetricDedup};
use hypercl_core::certificate::{self, Justification, Verdict};
use hypercl_core::symplectic::{self, InvariantReport};
use hypercl_core::{anchors, par, selftest, totaro};

#[derive(Parser)]
#[command(
    name = "hypercl",
    version,
    about = "Exact divisor-class and invariant computations for families of hyperelliptic curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Keep both complementary marking subsets at symmetric boundary levels
    /// instead of only the canonical representative.
    #[arg(long, global = true)]
    no_symmetric_dedup: bool,

    /// Run outside the tested parameter ranges.
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Rank of the divisor class group of the compactified moduli space.
    Rank { g: usize, n: usize },
    /// Enumerate the boundary divisor labels.
    Boundary { g: usize, n: usize },
    /// Fixed spaces of the symplectic group action; with N also the
    /// degree-two invariants of the product and the configuration space.
    Invariants { g: usize, n: Option<usize> },
    /// Second page of the configuration-space spectral sequence:
    /// entry dimensions, differential ranks, low-degree Betti numbers.
    Totaro { g: usize, n: usize },
    /// Replay the elimination certificate showing the divisor classes are
    /// linearly independent.
    Certify {
        g: usize,
        n: usize,
        /// Write the certificate that was checked to PATH.
        #[arg(long, value_name = "PATH")]
        emit_certificate: Option<PathBuf>,
        /// Check the certificate at PATH instead of the built-in one.
        #[arg(long, value_name = "PATH")]
        check_certificate: Option<PathBuf>,
    },
    /// Run the acceptance checklist.
    Selftest,
}

/// Everything a subcommand produces; `main` decides how to print it.
struct Report {
    command: &'static str,
    g: Option<usize>,
    n: Option<usize>,
    result: Value,
    anchors: Vec<String>,
    table: String,
    /// False when a computed claim failed (exit code 1).
    ok: bool,
}

fn main() -> ExitCode {
    par::init_thread_cap_from_env();
    let cli = Cli::parse();
    let dedup = if cli.no_symmetric_dedup {
        SymmetricDedup::KeepBoth
    } else {
        SymmetricDedup::Canonical
    };
    match run(cli.command, dedup, cli.force) {
        Ok(report) => {
            match cli.format {
                Format::Json => {
                    let envelope = json!({
                        "command": report.command,
                        "g": report.g,
                        "n": report.n,
                        "result": report.result,
                        "anchors": report.anchors,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&envelope)
                            .expect("report serialization cannot fail")
                    );
                }
                Format::Table => print!("{}", report.table),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, dedup: SymmetricDedup, force: bool) -> Result<Report, String> {
    match command {
        Command::Rank { g, n } => {
            guard(force, g <= 6 && n <= 6, "rank", g, n, "g <= 6, n <= 6")?;
            rank(g, n, dedup)
        }
        Command::Boundary { g, n } => {
            guard(force, g <= 6 && n <= 6, "boundary", g, n, "g <= 6, n <= 6")?;
            boundary_cmd(g, n, dedup)
        }
        Command::Invariants { g, n: Some(n) } => {
            guard(
                force,
                g <= 4 && n <= 4,
                "invariants",
                g,
                n,
                "g <= 4, n <= 4",
            )?;
            invariants(g, Some(n))
        }
        Command::Invariants { g, n: None } => {
            if g > 10 && !force {
                return Err(format!(
                    "invariants is tested for g <= 10, got g = {g} (pass --force to run anyway)"
                ));
            }
            invariants(g, None)
        }
        Command::Totaro { g, n } => {
            guard(force, g <= 4 && n <= 4, "totaro", g, n, "g <= 4, n <= 4")?;
            totaro_cmd(g, n)
        }
        Command::Certify {
            g,
            n,
            emit_certificate,
            check_certificate,
        } => {
            guard(force, g <= 6 && n <= 6, "certify", g, n, "g <= 6, n <= 6")?;
            certify(g, n, emit_certificate, check_certificate)
        }
        Command::Selftest => Ok(selftest_cmd()),
    }
}

fn guard(
    force: bool,
    within: bool,
    what: &str,
    g: usize,
    n: usize,
    limits: &str,
) -> Result<(), String> {
    if within || force {
        Ok(())
    } else {
        Err(format!(
            "{what} is tested for {limits}, got g = {g}, n = {n} (pass --force to run anyway)"
        ))
    }
}

fn err_str(e: hypercl_core::Error) -> String {
    e.to_string()
}

fn rank(g: usize, n: usize, dedup: SymmetricDedup) -> Result<Report, String> {
    let report = boundary::rank_report(g, n, dedup).map_err(err_str)?;
    let ok = report.interior_matches_invariants != Some(false);
    let labels: Vec<String> = report.labels.iter().map(ToString::to_string).collect();
    let result = json!({
        "num_psi": report.num_psi,
        "num_boundary": report.num_boundary,
        "rank_cl": report.rank_cl,
        "rank_pic_interior": report.rank_pic_interior,
        "interior_matches_invariants": report.interior_matches_invariants,
        "labels": labels,
    });

    let mut t = String::new();
    let _ = writeln!(t, "rank report (g = {g}, n = {n})");
    let _ = writeln!(t, "  psi classes           {}", report.num_psi);
    let _ = writeln!(t, "  boundary divisors     {}", report.num_boundary);
    let _ = writeln!(t, "  rank of class group   {}", report.rank_cl);
    let _ = writeln!(t, "  rank of interior Pic  {}", report.rank_pic_interior);
    let check = match report.interior_matches_invariants {
        Some(true) => "agrees with the invariant computation",
        Some(false) => "DISAGREES with the invariant computation",
        None => "not cross-checked at this size",
    };
    let _ = writeln!(t, "  interior rank         {check}");
    let _ = writeln!(t, "  generators:");
    for label in &report.labels {
        let _ = writeln!(t, "    {label}");
    }

    Ok(Report {
        command: "rank",
        g: Some(g),
        n: Some(n),
        result,
        anchors: own(&boundary::rank_report_anchors()),
        table: t,
        ok,
    })
}

fn boundary_cmd(g: usize, n: usize, dedup: SymmetricDedup) -> Result<Report, String> {
    let labels = boundary::enumerate_boundary(g, n, dedup).map_err(err_str)?;
    let closed_form = boundary::boundary_count_closed_form(g, n, dedup);
    let ok = labels.len() == closed_form;
    let names: Vec<String> = labels.iter().map(ToString::to_string).collect();
    let result = json!({
        "count": labels.len(),
        "count_closed_form": closed_form,
        "dedup": dedup_name(dedup),
        "labels": names,
    });

    let mut t = String::new();
    let _ = writeln!(
        t,
        "boundary divisors (g = {g}, n = {n}, dedup = {}): {}",
        dedup_name(dedup),
        labels.len()
    );
    for label in &labels {
        let _ = writeln!(t, "  {label}");
    }
    if !ok {
        let _ = writeln!(t, "  MISMATCH: closed-form count is {closed_form}");
    }

    Ok(Report {
        command: "boundary",
        g: Some(g),
        n: Some(n),
        result,
        anchors: own(&[
            anchors::BOUNDARY_ENUMERATION,
            anchors::BOUNDARY_SYMMETRIC_DEDUP,
        ]),
        table: t,
        ok,
    })
}

fn invariants(g: usize, n: Option<usize>) -> Result<Report, String> {
    let gens = symplectic::generators(g).map_err(err_str)?;
    let h1 = symplectic::fixed_vectors(&gens).map_err(err_str)?;
    let bilinear = symplectic::fixed_bilinear(&gens).map_err(err_str)?;

    let mut result = json!({
        "h1_fixed_vectors": invariant_json(&h1),
        "bilinear_forms": invariant_json(&bilinear),
    });
    let mut anchor_list = vec![anchors::SYMPLECTIC_GENERATORS, anchors::INVARIANT_BILINEAR];
    let mut ok = true;

    let mut t = String::new();
    match n {
        Some(n) => {
            let _ = writeln!(t, "invariant subspaces (g = {g}, n = {n})");
        }
        None => {
            let _ = writeln!(t, "invariant subspaces (g = {g})");
        }
    }
    let _ = writeln!(
        t,
        "  {:<18} ambient {:>5}   dimension {}",
        h1.space, h1.ambient_dim, h1.dimension
    );
    let _ = writeln!(
        t,
        "  {:<18} ambient {:>5}   dimension {}",
        bilinear.space, bilinear.ambient_dim, bilinear.dimension
    );

    if let Some(n) = n {
        let h2 = symplectic::invariants_h2_cn(g, n).map_err(err_str)?;
        let config = symplectic::invariants_h2_config(g, n).map_err(err_str)?;
        ok = config.gamma_spans_w_invariant;
        result["h2_product"] = invariant_json(&h2);
        result["h2_config"] = json!({
            "dim_w_invariant": config.dim_w_invariant,
            "dim_v_invariant": config.dim_v_invariant,
            "dim_ker02_invariant": config.dim_ker02_invariant,
            "dimension": config.dimension,
            "gamma_spans_w_invariant": config.gamma_spans_w_invariant,
        });
        anchor_list.push(anchors::INVARIANT_H2_PRODUCT);
        anchor_list.push(anchors::INVARIANT_H2_CONFIG);

        let _ = writeln!(
            t,
            "  {:<18} ambient {:>5}   dimension {}",
            h2.space, h2.ambient_dim, h2.dimension
        );
        let _ = writeln!(
            t,
            "  {:<18} dimension {} (w {}, v {}, ker02 {})",
            "h2-config",
            config.dimension,
            config.dim_w_invariant,
            config.dim_v_invariant,
            config.dim_ker02_invariant
        );
        let _ = writeln!(
            t,
            "  point classes span the invariant quotient: {}",
            if config.gamma_spans_w_invariant {
                "yes"
            } else {
                "NO"
            }
        );
    }

    Ok(Report {
        command: "invariants",
        g: Some(g),
        n,
        result,
        anchors: own(&anchor_list),
        table: t,
        ok,
    })
}

fn invariant_json(r: &InvariantReport) -> Value {
    let basis: Vec<Vec<String>> = r
        .basis
        .iter()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .collect();
    json!({
        "space": r.space,
        "ambient_dim": r.ambient_dim,
        "dimension": r.dimension,
        "basis": basis,
    })
}

fn totaro_cmd(g: usize, n: usize) -> Result<Report, String> {
    if n == 0 {
        return Err("the spectral model needs at least one point".into());
    }
    let mut e_dims = Vec::new();
    for q in 0..n {
        for p in 0..=2 {
            e_dims.push(json!({"p": p, "q": q, "dim": totaro::e_dim(g, n, p, q)}));
        }
    }

    // Ranks of the differentials that feed the degree-two Betti numbers.
    let mut d2_ranks = Vec::new();
    let mut sources: Vec<(usize, usize)> = Vec::new();
    if n >= 2 {
        sources.push((0, 1));
        sources.push((1, 1));
    }
    if n >= 3 {
        sources.push((0, 2));
    }
    for &(p, q) in &sources {
        let m = totaro::d2_matrix(g, n, p, q);
        d2_ranks.push(json!({
            "p": p,
            "q": q,
            "rows": m.rows(),
            "cols": m.cols(),
            "rank": m.rank(),
        }));
    }

    let dims = totaro::config_cohomology_dims(g, n);
    let result = json!({
        "e_dims": e_dims,
        "d2_ranks": d2_ranks,
        "config": {
            "h0": dims.h0,
            "h1": dims.h1,
            "h2": dims.h2,
            "dim_w": dims.dim_w,
            "dim_v": dims.dim_v,
            "dim_ker02": dims.dim_ker02,
        },
    });

    let mut t = String::new();
    let _ = writeln!(t, "spectral model (g = {g}, n = {n})");
    let _ = writeln!(t, "  second-page dimensions (p = 0, 1, 2):");
    for q in (0..n).rev() {
        let row: Vec<String> = (0..=2)
            .map(|p| format!("{:>6}", totaro::e_dim(g, n, p, q)))
            .collect();
        let _ = writeln!(t, "    q = {q}: {}", row.join(" "));
    }
    for (entry, &(p, q)) in d2_ranks.iter().zip(&sources) {
        let _ = writeln!(
            t,
            "  d2 on ({p},{q}): rank {} ({} columns, {} rows)",
            entry["rank"], entry["cols"], entry["rows"]
        );
    }
    let _ = writeln!(
        t,
        "  configuration-space betti numbers: h0 = {}, h1 = {}, h2 = {}",
        dims.h0, dims.h1, dims.h2
    );
    let _ = writeln!(
        t,
        "  h2 split: w = {}, v = {}, ker02 = {}",
        dims.dim_w, dims.dim_v, dims.dim_ker02
    );

    Ok(Report {
        command: "totaro",
        g: Some(g),
        n: Some(n),
        result,
        anchors: own(&[anchors::FIBER_MODEL_DIMS, anchors::D2_INJECTIVE]),
        table: t,
        ok: true,
    })
}

fn certify(
    g: usize,
    n: usize,
    emit: Option<PathBuf>,
    check: Option<PathBuf>,
) -> Result<Report, String> {
    let generators = certificate::certificate_generators(g, n).map_err(err_str)?;
    let steps = match &check {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            certificate::parse_certificate(&text, g, n).map_err(err_str)?
        }
        None => certificate::builtin_certificate(g, n).map_err(err_str)?,
    };
    if let Some(path) = &emit {
        fs::write(path, certificate::emit_certificate(&steps))
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }

    let verdict = certificate::check_certificate(&steps, &generators);
    let numeric_rank = certificate::numeric_rank_sanity(&steps);

    // Anchors actually cited by the steps, in order of first appearance.
    let mut cited: Vec<String> = Vec::new();
    for step in &steps {
        if !cited.contains(&step.row.anchor) {
            cited.push(step.row.anchor.clone());
        }
    }

    let mut t = String::new();
    let _ = writeln!(t, "independence certificate (g = {g}, n = {n})");
    let _ = writeln!(t, "  generators  {}", generators.len());
    let _ = writeln!(t, "  steps       {}", steps.len());

    let (result, ok) = match &verdict {
        Verdict::Certified { eliminated } => {
            let degree_row_eliminations = eliminated
                .iter()
                .filter(|(_, i)| steps[*i].justification == Justification::DegreeRow)
                .count();
            let matches = numeric_rank == degree_row_eliminations;
            let elim_json: Vec<Value> = eliminated
                .iter()
                .map(|(label, i)| {
                    json!({
                        "label": label.to_string(),
                        "step": i,
                        "family": steps[*i].row.family_id,
                    })
                })
                .collect();

            let _ = writeln!(t, "  verdict     certified");
            let _ = writeln!(t, "  eliminations:");
            for (label, i) in eliminated {
                let _ = writeln!(
                    t,
                    "    step {i:<3} {:<24} {:<28} {}",
                    label.to_string(),
                    steps[*i].row.family_id,
                    steps[*i].justification
                );
            }
            let _ = writeln!(
                t,
                "  numeric rank of degree rows: {numeric_rank} for {degree_row_eliminations} eliminations ({})",
                if matches { "matches" } else { "MISMATCH" }
            );

            (
                json!({
                    "verdict": "certified",
                    "generators": generators.len(),
                    "steps": steps.len(),
                    "eliminated": elim_json,
                    "numeric_rank": numeric_rank,
                    "degree_row_eliminations": degree_row_eliminations,
                    "numeric_rank_matches": matches,
                }),
                matches,
            )
        }
        Verdict::Failed {
            step,
            reason,
            uncovered,
            blocked,
        } => {
            let uncovered_json: Vec<String> = uncovered.iter().map(ToString::to_string).collect();
            let blocked_json: Vec<Value> = blocked
                .iter()
                .map(|b| {
                    json!({
                        "step": b.step,
                        "family": b.family_id,
                        "reason": b.reason.to_string(),
                        "residual": b.residual.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect();

            match step {
                Some(i) => {
                    let _ = writeln!(t, "  verdict     FAILED at step {i}: {reason}");
                }
                None => {
                    let _ = writeln!(t, "  verdict     FAILED: {reason}");
                }
            }
            if !uncovered.is_empty() {
                let _ = writeln!(t, "  uncovered:  {}", uncovered_json.join(", "));
            }
            for b in blocked {
                let _ = writeln!(
                    t,
                    "  blocked     step {} ({}): {}; residual {}",
                    b.step,
                    b.family_id,
                    b.reason,
                    b.residual
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }

            (
                json!({
                    "verdict": "failed",
                    "generators": generators.len(),
                    "steps": steps.len(),
                    "failed_step": step,
                    "reason": reason,
                    "uncovered": uncovered_json,
                    "blocked": blocked_json,
                    "numeric_rank": numeric_rank,
                }),
                false,
            )
        }
    };

    Ok(Report {
        command: "certify",
        g: Some(g),
        n: Some(n),
        result,
        anchors: cited,
        table: t,
        ok,
    })
}

fn selftest_cmd() -> Report {
    let outcomes = selftest::run_all();
    let ok = outcomes.iter().all(|o| o.passed);
    let criteria: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "index": o.index,
                "name": o.name,
                "passed": o.passed,
                "cases": o.cases,
                "failures": o.failures,
            })
        })
        .collect();

    let mut t = String::new();
    for o in &outcomes {
        let _ = writeln!(t, "{}", o.line());
        for failure in &o.failures {
            let _ = writeln!(t, "  - {failure}");
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(t, "{passed} of {} criteria passed", outcomes.len());

    Report {
        command: "selftest",
        g: None,
        n: None,
        result: json!({"criteria": criteria, "passed": ok}),
        anchors: own(&all_anchors()),
        table: t,
        ok,
    }
}

/// Every anchor the checklist touches, in declaration order.
fn all_anchors() -> Vec<&'static str> {
    vec![
        anchors::PSI_INTERIOR,
        anchors::CLASS_GROUP_BASIS,
        anchors::BOUNDARY_ENUMERATION,
        anchors::BOUNDARY_SYMMETRIC_DEDUP,
        anchors::PULLBACK_SEPARATING,
        anchors::PULLBACK_IRR_COEFF2,
        anchors::FAMILY_DIAGONAL,
        anchors::FAMILY_RATIONAL_TAIL,
        anchors::FAMILY_IRR_PENCIL,
        anchors::FAMILY_CONJUGATE_PENCIL,
        anchors::FAMILY_FIXED_NODE_PENCIL,
        anchors::INVARIANT_BILINEAR,
        anchors::INVARIANT_H2_PRODUCT,
        anchors::INVARIANT_H2_CONFIG,
        anchors::FIBER_MODEL_DIMS,
        anchors::D2_INJECTIVE,
        anchors::SYMPLECTIC_GENERATORS,
    ]
}

fn dedup_name(dedup: SymmetricDedup) -> &'static str {
    match dedup {
        SymmetricDedup::Canonical => "canonical",
        SymmetricDedup::KeepBoth => "keep-both",
    }
}

fn own(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}
