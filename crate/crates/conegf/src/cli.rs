//! Command-line front end with reproducible JSON output.
//!
//! Subcommands: `verify`, `verify-all`, `expand`, `enumerate`, `brion`,
//! `volume`, `conjecture`, `graphs`. Identical argv and seed produce
//! byte-identical output: term maps iterate in sorted order, reports have a
//! fixed field order, and all randomness comes from the seeded generator
//! recorded in the report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::brion;
use crate::cone::cone_gf;
use crate::error::Error;
use crate::families::{self, cayley_polytope, FamilySpec};
use crate::genfun::TruncatedSeries;
use crate::identities::{self, IdentityId, Settings, VerificationReport};
use crate::oracle;
use crate::volume;
use crate::Result;

const USAGE: &str = "\
conegf: exact lattice-point generating functions and identity verification

USAGE:
    conegf <subcommand> [flags]

SUBCOMMANDS:
    verify <identity-id>   verify one identity instance
    verify-all             run the full default verification suite
    expand                 expand a family's generating series
    enumerate              list the family's lattice points (JSON lines)
    brion                  check the vertex tangent-cone sum (--cayley j)
    volume                 exact Cayley polytope volume (--cayley j)
    conjecture             volume vs connected-graph table (--jmax J)
    graphs                 connected labeled graph counts (--vmax V)

IDENTITIES:
    higherdiff-q (r)       higherdiff-full (r, n)
    ngon-q (n)             ngon-full (n)
    hermite-q (n)          hermite-full (n)
    cayley-formula (j)     cayley-recurrence (j)

FLAGS:
    --params k=v[,k=v...]  identity or family parameters
    --order N              series truncation order
    --points P             random evaluation points (default 20)
    --seed S               random seed (default 0)
    --format json|text     output format (default text)
    --out FILE             write output to FILE instead of stdout

FAMILIES (for expand / enumerate):
    higherdiff:r=2,n=4   ngon:n=5   hermite:n=4   cayley:j=5
    hyperslice:n=4,k=2,t=8
";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
struct Flags {
    params: Option<String>,
    order: Option<i64>,
    points: usize,
    seed: u64,
    format: Format,
    out: Option<String>,
    cayley: Option<i64>,
    jmax: Option<i64>,
    vmax: Option<u32>,
    inject_fault: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            params: None,
            order: None,
            points: 20,
            seed: 0,
            format: Format::Text,
            out: None,
            cayley: None,
            jmax: None,
            vmax: None,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug)]
enum Command {
    Verify { id: IdentityId, flags: Flags },
    VerifyAll { flags: Flags },
    Expand { flags: Flags },
    Enumerate { flags: Flags },
    Brion { flags: Flags },
    Volume { flags: Flags },
    Conjecture { flags: Flags },
    Graphs { flags: Flags },
    Help,
}

fn parse_flags(args: &[String]) -> Result<Flags> {
    let mut flags = Flags::default();
    let mut i = 0;
    let value = |i: &mut usize| -> Result<String> {
        *i += 1;
        args.get(*i)
            .cloned()
            .ok_or_else(|| Error::Parse(format!("flag {} needs a value", args[*i - 1])))
    };
    while i < args.len() {
        match args[i].as_str() {
            "--params" => flags.params = Some(value(&mut i)?),
            "--order" => {
                let v = value(&mut i)?;
                flags.order = Some(
                    v.parse()
                        .map_err(|_| Error::Parse(format!("bad --order {v:?}")))?,
                );
            }
            "--points" => {
                let v = value(&mut i)?;
                flags.points = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad --points {v:?}")))?;
            }
            "--seed" => {
                let v = value(&mut i)?;
                flags.seed = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad --seed {v:?}")))?;
            }
            "--format" => {
                let v = value(&mut i)?;
                flags.format = match v.as_str() {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    other => return Err(Error::Parse(format!("bad --format {other:?}"))),
                };
            }
            "--out" => flags.out = Some(value(&mut i)?),
            "--cayley" => {
                let v = value(&mut i)?;
                flags.cayley = Some(
                    v.parse()
                        .map_err(|_| Error::Parse(format!("bad --cayley {v:?}")))?,
                );
            }
            "--jmax" => {
                let v = value(&mut i)?;
                flags.jmax = Some(
                    v.parse()
                        .map_err(|_| Error::Parse(format!("bad --jmax {v:?}")))?,
                );
            }
            "--vmax" => {
                let v = value(&mut i)?;
                flags.vmax = Some(
                    v.parse()
                        .map_err(|_| Error::Parse(format!("bad --vmax {v:?}")))?,
                );
            }
            "--inject-fault" => flags.inject_fault = true,
            other => return Err(Error::Parse(format!("unknown flag {other:?}"))),
        }
        i += 1;
    }
    Ok(flags)
}

fn parse(args: &[String]) -> Result<Command> {
    let Some(sub) = args.first() else {
        return Ok(Command::Help);
    };
    match sub.as_str() {
        "help" | "--help" | "-h" => Ok(Command::Help),
        "verify" => {
            let id: IdentityId = args
                .get(1)
                .ok_or_else(|| Error::Parse("verify needs an identity id".into()))?
                .parse()?;
            Ok(Command::Verify {
                id,
                flags: parse_flags(&args[2..])?,
            })
        }
        "verify-all" => Ok(Command::VerifyAll {
            flags: parse_flags(&args[1..])?,
        }),
        "expand" => Ok(Command::Expand {
            flags: parse_flags(&args[1..])?,
        }),
        "enumerate" => Ok(Command::Enumerate {
            flags: parse_flags(&args[1..])?,
        }),
        "brion" => Ok(Command::Brion {
            flags: parse_flags(&args[1..])?,
        }),
        "volume" => Ok(Command::Volume {
            flags: parse_flags(&args[1..])?,
        }),
        "conjecture" => Ok(Command::Conjecture {
            flags: parse_flags(&args[1..])?,
        }),
        "graphs" => Ok(Command::Graphs {
            flags: parse_flags(&args[1..])?,
        }),
        other => Err(Error::Parse(format!("unknown subcommand {other:?}"))),
    }
}

fn settings_of(flags: &Flags) -> Settings {
    Settings {
        order: flags.order,
        points: flags.points,
        seed: flags.seed,
    }
}

fn report_line(report: &VerificationReport) -> String {
    let params: Vec<String> = report
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    let mut line = format!(
        "{} {} [{}]",
        if report.passed() { "PASS" } else { "FAIL" },
        report.identity,
        params.join(",")
    );
    if let Some(order) = report.order {
        let _ = write!(line, " order={order}");
    }
    if let Some(points) = report.points {
        let _ = write!(line, " points={points}");
    }
    if let Some(w) = &report.witness {
        let _ = write!(line, " witness={w:?}");
    }
    line
}

/// The aggregate document emitted by `verify-all`.
#[derive(Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_override: Option<i64>,
    pub reports: Vec<VerificationReport>,
    pub conjecture: Vec<volume::ConjectureRow>,
    pub all_pass: bool,
}

/// Runs every identity on its default parameter grid, the Brion checks, and
/// the volume/graph-count comparison.
pub fn run_suite(settings: &Settings, inject_fault: bool) -> Result<SuiteReport> {
    let mut reports = Vec::new();
    let p = |pairs: &[(&str, i64)]| -> BTreeMap<String, i64> {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    };

    for r in 1..=3 {
        reports.push(identities::verify(
            IdentityId::HigherDiffQ,
            &p(&[("r", r)]),
            settings,
        )?);
    }
    for r in 1..=3 {
        for n in 1..=5 {
            reports.push(identities::verify(
                IdentityId::HigherDiffFull,
                &p(&[("r", r), ("n", n)]),
                settings,
            )?);
        }
    }
    for n in 3..=6 {
        reports.push(identities::verify(
            IdentityId::NGonQ,
            &p(&[("n", n)]),
            settings,
        )?);
        reports.push(identities::verify(
            IdentityId::NGonFull,
            &p(&[("n", n)]),
            settings,
        )?);
        reports.push(identities::verify(
            IdentityId::HermiteQ,
            &p(&[("n", n)]),
            settings,
        )?);
        reports.push(identities::verify(
            IdentityId::HermiteFull,
            &p(&[("n", n)]),
            settings,
        )?);
    }
    for j in 2..=6 {
        reports.push(identities::verify(
            IdentityId::CayleyPolynomialFormula,
            &p(&[("j", j)]),
            settings,
        )?);
    }
    for j in 3..=6 {
        reports.push(identities::verify(
            IdentityId::CayleyRecurrence,
            &p(&[("j", j)]),
            settings,
        )?);
    }
    for j in 2..=5 {
        let polytope = cayley_polytope(j)?;
        reports.push(brion::brion_verify(&polytope, settings.points, settings.seed)?);
    }
    for j in 2..=6 {
        let polytope = cayley_polytope(j)?;
        reports.push(brion::brion_q_specialization_verify(
            &polytope,
            settings.points,
            settings.seed,
        )?);
    }
    if inject_fault {
        reports.push(identities::cayley_recurrence_selftest(3)?);
    }

    let conjecture = volume::conjecture_report(7)?;
    let offsets_ok = conjecture
        .iter()
        .all(|row| row.matches_j_minus_1 || row.matches_j);
    let all_pass = reports.iter().all(|r| r.passed()) && offsets_ok;

    Ok(SuiteReport {
        seed: settings.seed,
        points: settings.points,
        order_override: settings.order,
        reports,
        conjecture,
        all_pass,
    })
}

fn family_of(flags: &Flags) -> Result<FamilySpec> {
    flags
        .params
        .as_deref()
        .ok_or_else(|| Error::Parse("missing --params".into()))?
        .parse()
}

/// Multivariate series of a family to the given order: geometrically for the
/// cone families, by enumeration for the bounded ones.
fn family_series(spec: &FamilySpec, order: i64) -> Result<(TruncatedSeries, &'static str)> {
    match *spec {
        FamilySpec::HigherDiff { r, n } => {
            let gf = cone_gf(&families::higherdiff_cone(r, n)?)?;
            Ok((gf.expand(order)?, "geometric"))
        }
        FamilySpec::NGon { n } => {
            let (k1, k2) = families::ngon_cones(n)?;
            let gf = cone_gf(&k1)?.gf_sub(&cone_gf(&k2)?)?;
            Ok((gf.expand(order)?, "geometric"))
        }
        FamilySpec::Hermite { n } => {
            let (orthant, cones) = families::hermite_cones(n)?;
            let mut gf = cone_gf(&orthant)?;
            for c in &cones {
                gf = gf.gf_sub(&cone_gf(c)?)?;
            }
            Ok((gf.expand(order)?, "geometric"))
        }
        FamilySpec::Cayley { .. } | FamilySpec::HypersimplexSlice { .. } => {
            let points = oracle::enumerate(&spec.constraints()?, order)?;
            Ok((oracle::to_series(&points), "oracle"))
        }
    }
}

fn emit(flags: &Flags, content: String) -> Result<()> {
    match &flags.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::Parse(format!("cannot write {path}: {e}"))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Help => {
            print!("{USAGE}");
            Ok(0)
        }
        Command::Verify { id, flags } => {
            let params = families::parse_params(flags.params.as_deref().unwrap_or(""))?;
            let report = identities::verify(id, &params, &settings_of(&flags))?;
            let content = match flags.format {
                Format::Json => to_json(&report),
                Format::Text => format!("{}\n", report_line(&report)),
            };
            emit(&flags, content)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::VerifyAll { flags } => {
            let suite = run_suite(&settings_of(&flags), flags.inject_fault)?;
            let content = match flags.format {
                Format::Json => to_json(&suite),
                Format::Text => {
                    let mut out = String::new();
                    for report in &suite.reports {
                        out.push_str(&report_line(report));
                        out.push('\n');
                    }
                    for row in &suite.conjecture {
                        let _ = writeln!(
                            out,
                            "CONJECTURE j={} Vol={} graphs(j-1)={} graphs(j)={} match={}",
                            row.j,
                            row.normalized_volume,
                            row.graphs_on_j_minus_1,
                            row.graphs_on_j,
                            if row.matches_j_minus_1 || row.matches_j {
                                "yes"
                            } else {
                                "NO"
                            }
                        );
                    }
                    let _ = writeln!(
                        out,
                        "{}",
                        if suite.all_pass { "ALL PASS" } else { "FAILURES" }
                    );
                    out
                }
            };
            emit(&flags, content)?;
            Ok(if suite.all_pass { 0 } else { 1 })
        }
        Command::Expand { flags } => {
            let spec = family_of(&flags)?;
            let order = flags.order.unwrap_or(12);
            let (series, route) = family_series(&spec, order)?;
            let content = match flags.format {
                Format::Json => to_json(&serde_json::json!({
                    "family": spec.to_string(),
                    "order": order,
                    "route": route,
                    "series": series,
                })),
                Format::Text => {
                    let mut out = String::new();
                    for (exp, coeff) in series.iter() {
                        let _ = writeln!(out, "{coeff}\t{:?}", exp.entries());
                    }
                    out
                }
            };
            emit(&flags, content)?;
            Ok(0)
        }
        Command::Enumerate { flags } => {
            let spec = family_of(&flags)?;
            let order = flags.order.unwrap_or(12);
            let points = oracle::enumerate(&spec.constraints()?, order)?;
            let content = match flags.format {
                Format::Json => to_json(&points),
                Format::Text => {
                    // one integer array per line
                    let mut out = String::new();
                    for point in &points.points {
                        out.push_str(&serde_json::to_string(point).expect("vec serializes"));
                        out.push('\n');
                    }
                    out
                }
            };
            emit(&flags, content)?;
            Ok(0)
        }
        Command::Brion { flags } => {
            let j = flags
                .cayley
                .ok_or_else(|| Error::Parse("brion needs --cayley J".into()))?;
            let polytope = cayley_polytope(j)?;
            let report = brion::brion_verify(&polytope, flags.points, flags.seed)?;
            let content = match flags.format {
                Format::Json => to_json(&report),
                Format::Text => format!("{}\n", report_line(&report)),
            };
            emit(&flags, content)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Volume { flags } => {
            let j = flags
                .cayley
                .ok_or_else(|| Error::Parse("volume needs --cayley J".into()))?;
            let vol = volume::cayley_volume(j)?;
            let normalized = volume::normalized_volume(j)?;
            // the factorial simplex cross-check only runs where tractable
            let simplices = if j <= 10 {
                Some(volume::normalized_volume_by_simplices(j)?)
            } else {
                None
            };
            let content = match flags.format {
                Format::Json => to_json(&serde_json::json!({
                    "j": j,
                    "volume": vol.to_string(),
                    "normalized_volume": normalized.to_string(),
                    "simplex_route": simplices.as_ref().map(|s| s.to_string()),
                })),
                Format::Text => match simplices {
                    Some(s) => {
                        format!("vol = {vol}\nVol = {normalized} (simplex route {s})\n")
                    }
                    None => format!("vol = {vol}\nVol = {normalized}\n"),
                },
            };
            emit(&flags, content)?;
            Ok(0)
        }
        Command::Conjecture { flags } => {
            let jmax = flags.jmax.unwrap_or(7);
            let rows = volume::conjecture_report(jmax)?;
            let content = match flags.format {
                Format::Json => to_json(&rows),
                Format::Text => {
                    let mut out = String::from(
                        "j\tVol\tgraphs(j-1)\tgraphs(j)\tmatches\n",
                    );
                    for row in &rows {
                        let which = match (row.matches_j_minus_1, row.matches_j) {
                            (true, true) => "both",
                            (true, false) => "j-1",
                            (false, true) => "j",
                            (false, false) => "none",
                        };
                        let _ = writeln!(
                            out,
                            "{}\t{}\t{}\t{}\t{}",
                            row.j,
                            row.normalized_volume,
                            row.graphs_on_j_minus_1,
                            row.graphs_on_j,
                            which
                        );
                    }
                    out
                }
            };
            emit(&flags, content)?;
            Ok(0)
        }
        Command::Graphs { flags } => {
            let vmax = flags.vmax.unwrap_or(8);
            let rows: Vec<(u32, String)> = (1..=vmax)
                .map(|v| (v, oracle::connected_graph_count(v).to_string()))
                .collect();
            let content = match flags.format {
                Format::Json => to_json(&serde_json::json!(rows
                    .iter()
                    .map(|(v, c)| serde_json::json!({"vertices": v, "connected": c}))
                    .collect::<Vec<_>>())),
                Format::Text => {
                    let mut out = String::new();
                    for (v, c) in rows {
                        let _ = writeln!(out, "{v}\t{c}");
                    }
                    out
                }
            };
            emit(&flags, content)?;
            Ok(0)
        }
    }
}

/// Entry point: returns the process exit code. Exit 0 on pass, 1 on a
/// verification failure, 2 on malformed arguments (message to stderr).
pub fn run(args: Vec<String>) -> i32 {
    let cmd = match parse(&args) {
        Ok(cmd) => cmd,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("run `conegf help` for usage");
            return 2;
        }
    };
    match execute(cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
