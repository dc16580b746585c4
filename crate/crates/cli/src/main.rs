//! `macdual`: command-line front end for exact inverse-system computations.
//!
//! Exit status: 0 on success, 2 when a computation is inconclusive (for
//! example a Hilbert function that does not stabilize within the bound, or a
//! divisibility probe without witness), 1 on any error.

mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use macdual::duality::{
    annihilator_component, dual_component, h_vector, hilbert_function, module_membership,
    DualPresentation, GradedIdeal,
};
use macdual::gadmissible::{
    divisibility_probe, g_sequence, probe_all, probe_default_set, verify_admissible, GSequence,
};
use macdual::points::{
    check_identity, reducedness_certificate, waring_decompose, ProjectivePoint,
};
use macdual::poly::{apply, factorial, Action, Flavor, SparsePoly, Weighting};
use macdual::semigroup::NumericalSemigroup;
use macdual::{Error, Q};
use serde_json::{json, Value};

use input::{parse_arg, read_poly_list, PolyList};

#[derive(Parser)]
#[command(name = "macdual", version, about = "Exact Macaulay inverse systems over the rationals")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    output: Format,

    /// Cap on worker threads for parallel probes.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal generators of (I + (x1^t))^⊥ for a numerical semigroup ring, t = 1..=trunc.
    SemigroupDual {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long)]
        trunc: u32,
    },
    /// The dual form L_j = Σ y^K over exponents of weighted degree j.
    Lform {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long)]
        j: u64,
    },
    /// Applies a ring polynomial to a dual polynomial.
    Apply {
        #[arg(long, default_value = "contract")]
        action: Action,
        #[arg(short = 'f')]
        f: String,
        #[arg(short = 'F')]
        big_f: String,
    },
    /// Basis of the inverse system of an ideal in one degree.
    Dual {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        j: u64,
        #[arg(long)]
        action: Option<Action>,
    },
    /// Hilbert function values HF(0..=jmax).
    Hf {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        jmax: u64,
    },
    /// Hilbert function until stabilization, h-vector and socle degree.
    Hvector {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        jmax: u64,
    },
    /// Basis of the annihilator of a dual module in one degree.
    Ann {
        /// File with dual generators (one per line).
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        degree: u64,
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        #[arg(long)]
        action: Option<Action>,
    },
    /// G-admissible generators H_1..H_T of a one-dimensional Gorenstein quotient.
    Gsequence {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        z: String,
        #[arg(long = "T")]
        big_t: u32,
        #[arg(long)]
        action: Option<Action>,
        /// Also check both admissibility conditions up to this level.
        #[arg(long)]
        verify: Option<usize>,
    },
    /// Bounded divisibility probes H_t = a ∘ (F ∘ H_r).
    Probe {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        rmax: usize,
        /// Probe a single element instead of the default monomial set.
        #[arg(long)]
        a: Option<String>,
        /// Multiplicity bound: probe monomials of total degree below it
        /// (defaults to the smallest weight).
        #[arg(long)]
        e: Option<u64>,
        #[arg(long)]
        action: Option<Action>,
    },
    /// Reducedness certificate of a zero-dimensional Gorenstein scheme.
    Reduced {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        z: String,
    },
    /// Membership of a dual polynomial in a finitely generated dual module.
    Member {
        #[arg(short = 'G')]
        g: String,
        #[arg(long)]
        module: PathBuf,
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
        #[arg(long)]
        action: Option<Action>,
    },
    /// Writes a form as a combination of powers of the given points' linear forms.
    WaringVerify {
        /// The dual form H.
        #[arg(long)]
        form: String,
        /// A point as comma-separated rationals; repeat for each point.
        #[arg(long = "point", required = true)]
        points: Vec<String>,
        /// Linear form used to report α_i = c_i · d! · z(P_i).
        #[arg(long)]
        z: Option<String>,
    },
}

#[derive(clap::Args)]
struct IdealArgs {
    /// File with ideal generators (one per line).
    #[arg(long)]
    ideal: PathBuf,
    /// Variable weights; overrides a `weights:` header in the file.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u64>>,
}

impl IdealArgs {
    fn load(&self) -> anyhow::Result<(GradedIdeal, Option<Action>)> {
        let PolyList {
            polys,
            weighting,
            action,
        } = read_poly_list(&self.ideal, Flavor::Ring, self.weights.as_deref())?;
        Ok((GradedIdeal::new(polys, weighting)?, action))
    }
}

/// Result of a command: printable text, structured data, and whether it was
/// conclusive.
struct Report {
    text: String,
    json: Value,
    status: Status,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Inconclusive,
    Failed,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            status: Status::Ok,
        }
    }
}

fn polys_json(polys: &[SparsePoly]) -> Value {
    Value::Array(polys.iter().map(|p| Value::String(p.to_string())).collect())
}

fn lines(polys: &[SparsePoly]) -> String {
    polys.iter().map(|p| format!("{p}\n")).collect()
}

fn resolve_action(flag: Option<Action>, file: Option<Action>, default: Action) -> Action {
    flag.or(file).unwrap_or(default)
}

fn semigroup_dual(gens: &[u64], trunc: u32) -> anyhow::Result<Report> {
    let sg = NumericalSemigroup::new(gens)?;
    let table = sg.level_table(trunc)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for level in &table {
        let degrees: Vec<String> = level.generators.iter().map(|g| g.degree.to_string()).collect();
        let forms: Vec<String> = level.generators.iter().map(|g| g.form.to_string()).collect();
        text += &format!("t={}  j={}  {}\n", level.t, degrees.join(","), forms.join(", "));
        rows.push(json!({
            "t": level.t,
            "generators": level.generators.iter().map(|g| json!({"j": g.degree, "form": g.form.to_string()})).collect::<Vec<_>>(),
        }));
    }
    let counts: Vec<usize> = table.iter().map(|l| l.generators.len()).collect();
    let type_ = counts.first().copied().unwrap_or(0);
    let level = table.first().is_some_and(|l| {
        let degrees: Vec<Option<u32>> = l
            .generators
            .iter()
            .map(|g| g.form.terms().map(|(e, _)| e.total_degree() as u32).max())
            .collect();
        degrees.windows(2).all(|w| w[0] == w[1])
    });
    text += &format!(
        "generators per level: {}\ntype={type_}\nlevel={}\n",
        counts.iter().map(usize::to_string).collect::<Vec<_>>().join(","),
        if level { "yes" } else { "no" }
    );
    Ok(Report::ok(
        text,
        json!({
            "generators": gens,
            "frobenius": sg.frobenius(),
            "levels": rows,
            "generators_per_level": counts,
            "type": type_,
            "level": level,
        }),
    ))
}

fn sequence_text(seq: &GSequence) -> (String, Value) {
    let mut text = String::new();
    let mut items = Vec::new();
    for (i, h) in seq.generators().iter().enumerate() {
        let t = i + 1;
        let d = seq.degree(t).unwrap_or(0);
        text += &format!("H{t}  j={d}  {h}\n");
        items.push(json!({"t": t, "j": d, "H": h.to_string()}));
    }
    (text, Value::Array(items))
}

fn run(command: Command) -> anyhow::Result<Report> {
    match command {
        Command::SemigroupDual { gens, trunc } => semigroup_dual(&gens, trunc),
        Command::Lform { gens, j } => {
            let sg = NumericalSemigroup::new(&gens)?;
            let l = sg.l_form(j);
            Ok(Report::ok(
                format!("{l}\n"),
                json!({"generators": gens, "j": j, "L": l.to_string()}),
            ))
        }
        Command::Apply { action, f, big_f } => {
            let n = [&f, &big_f]
                .iter()
                .map(|s| macdual::poly::parse_poly(s, None, None).map(|p| p.nvars()).unwrap_or(0))
                .max()
                .unwrap_or(0);
            let f = parse_arg(&f, Flavor::Ring, n, "-f")?;
            let big_f = parse_arg(&big_f, Flavor::Dual, n, "-F")?;
            let out = apply(&f, &big_f, action)?;
            Ok(Report::ok(
                format!("{out}\n"),
                json!({"action": action.to_string(), "result": out.to_string()}),
            ))
        }
        Command::Dual { ideal, j, action } => {
            let (ideal, file_action) = ideal.load()?;
            let act = resolve_action(action, file_action, Action::Contraction);
            let basis = dual_component(&ideal, j, act);
            Ok(Report::ok(
                format!("dimension={}\n{}", basis.len(), lines(&basis)),
                json!({"j": j, "action": act.to_string(), "dimension": basis.len(), "basis": polys_json(&basis)}),
            ))
        }
        Command::Hf { ideal, jmax } => {
            let (ideal, _) = ideal.load()?;
            let values: Vec<usize> = (0..=jmax).map(|j| hilbert_function(&ideal, j)).collect();
            let text = values.iter().enumerate().map(|(j, v)| format!("HF({j})={v}\n")).collect();
            Ok(Report::ok(text, json!({"hilbert": values})))
        }
        Command::Hvector { ideal, jmax } => {
            let (ideal, _) = ideal.load()?;
            let hv = h_vector(&ideal, jmax)?;
            let join = |v: &[String]| v.join(",");
            let text = format!(
                "hilbert={}\nh={}\ns={}\nr={}\n",
                join(&hv.hilbert.iter().map(ToString::to_string).collect::<Vec<_>>()),
                join(&hv.h.iter().map(ToString::to_string).collect::<Vec<_>>()),
                hv.socle_degree,
                hv.stable_value
            );
            Ok(Report::ok(
                text,
                json!({"hilbert": hv.hilbert, "h": hv.h, "s": hv.socle_degree, "r": hv.stable_value}),
            ))
        }
        Command::Ann {
            module,
            degree,
            weights,
            action,
        } => {
            let list = read_poly_list(&module, Flavor::Dual, weights.as_deref())?;
            let act = resolve_action(action, list.action, Action::Contraction);
            let m = DualPresentation::new(list.polys, act, list.weighting)?;
            let basis = annihilator_component(&m, degree)?;
            Ok(Report::ok(
                format!("dimension={}\n{}", basis.len(), lines(&basis)),
                json!({"degree": degree, "action": act.to_string(), "dimension": basis.len(), "basis": polys_json(&basis)}),
            ))
        }
        Command::Gsequence {
            ideal,
            z,
            big_t,
            action,
            verify,
        } => {
            let (ideal, file_action) = ideal.load()?;
            let act = resolve_action(action, file_action, Action::Contraction);
            let z = parse_arg(&z, Flavor::Ring, ideal.nvars(), "--z")?;
            let seq = g_sequence(&ideal, &z, big_t, act)?;
            let (mut text, items) = sequence_text(&seq);
            let mut json = json!({"z": z.to_string(), "action": act.to_string(), "H": items});
            let mut status = Status::Ok;
            if let Some(l_max) = verify {
                let report = verify_admissible(&seq, l_max)?;
                let mut levels = Vec::new();
                for l in &report.levels {
                    let ann = match l.annihilator {
                        Some(true) => "ok",
                        Some(false) => "FAIL",
                        None => "n/a",
                    };
                    text += &format!(
                        "level {}: shift={} annihilator={ann}\n",
                        l.level,
                        if l.shift { "ok" } else { "FAIL" }
                    );
                    levels.push(json!({"level": l.level, "shift": l.shift, "annihilator": l.annihilator}));
                }
                text += &format!("admissible={}\n", report.passed());
                json["verification"] = json!({"levels": levels, "admissible": report.passed()});
                if !report.passed() {
                    status = Status::Failed;
                }
            }
            Ok(Report { text, json, status })
        }
        Command::Probe {
            ideal,
            z,
            t,
            rmax,
            a,
            e,
            action,
        } => {
            let (ideal, file_action) = ideal.load()?;
            let act = resolve_action(action, file_action, Action::Contraction);
            let z = parse_arg(&z, Flavor::Ring, ideal.nvars(), "--z")?;
            let seq = g_sequence(&ideal, &z, rmax as u32, act)?;
            let outcomes = match a {
                Some(a) => {
                    let a = parse_arg(&a, Flavor::Ring, ideal.nvars(), "--a")?;
                    let witness = divisibility_probe(&seq, &a, t, rmax)?;
                    vec![macdual::gadmissible::ProbeOutcome { a, witness }]
                }
                None => {
                    let e = e.unwrap_or_else(|| ideal.weighting().weights().iter().copied().min().unwrap_or(1));
                    let probes = probe_default_set(&seq, e)?;
                    probe_all(&seq, &probes, t, rmax)?
                }
            };
            let mut text = String::new();
            let mut items = Vec::new();
            for o in &outcomes {
                match &o.witness {
                    Some(w) => {
                        text += &format!("a={}  F={}  r={}\n", o.a, w.f, w.r);
                        items.push(json!({"a": o.a.to_string(), "F": w.f.to_string(), "r": w.r}));
                    }
                    None => {
                        text += &format!("a={}  no witness with r<={rmax}\n", o.a);
                        items.push(json!({"a": o.a.to_string(), "F": null, "r": null}));
                    }
                }
            }
            let failures = outcomes.iter().filter(|o| o.witness.is_none()).count();
            text += &format!("probed={} without_witness={failures}\n", outcomes.len());
            Ok(Report {
                text,
                json: json!({"t": t, "rmax": rmax, "probes": items, "without_witness": failures}),
                status: if failures == 0 { Status::Ok } else { Status::Inconclusive },
            })
        }
        Command::Reduced { ideal, z } => {
            let (ideal, _) = ideal.load()?;
            let z = parse_arg(&z, Flavor::Ring, ideal.nvars(), "--z")?;
            let cert = reducedness_certificate(&ideal, &z)?;
            Ok(Report::ok(format!("{cert}\n"), cert.to_json()))
        }
        Command::Member {
            g,
            module,
            weights,
            action,
        } => {
            let list = read_poly_list(&module, Flavor::Dual, weights.as_deref())?;
            let act = resolve_action(action, list.action, Action::Contraction);
            let n = list.weighting.len();
            let m = DualPresentation::new(list.polys, act, list.weighting)?;
            let g = parse_arg(&g, Flavor::Dual, n, "-G")?;
            match module_membership(&g, &m)? {
                Some(w) => {
                    debug_assert_eq!(w.reapply(&m)?, g);
                    let mut text = String::from("member=true\n");
                    let mut parts = Vec::new();
                    for (f, i) in &w.parts {
                        text += &format!("f{}={f}\n", i + 1);
                        parts.push(json!({"generator": i + 1, "f": f.to_string()}));
                    }
                    Ok(Report::ok(text, json!({"member": true, "witness": parts})))
                }
                None => Ok(Report::ok("member=false\n".into(), json!({"member": false}))),
            }
        }
        Command::WaringVerify { form, points, z } => waring_verify(&form, &points, z.as_deref()),
    }
}

fn parse_point(text: &str) -> anyhow::Result<ProjectivePoint> {
    let coords = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<Q>()
                .with_context(|| format!("invalid coordinate '{}' in point '{text}'", c.trim()))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(ProjectivePoint::new(coords)?)
}

fn waring_verify(form: &str, points: &[String], z: Option<&str>) -> anyhow::Result<Report> {
    let points = points.iter().map(|p| parse_point(p)).collect::<anyhow::Result<Vec<_>>>()?;
    let n = points[0].len();
    let h = parse_arg(form, Flavor::Dual, n, "--form")?;
    let Some(d) = h.is_homogeneous(&Weighting::standard(n)) else {
        bail!("--form must be homogeneous in the standard grading");
    };
    let Some(c) = waring_decompose(&h, &points)? else {
        return Ok(Report {
            text: "decomposable=false\n".into(),
            json: json!({"decomposable": false}),
            status: Status::Failed,
        });
    };
    let mut text = String::from("decomposable=true\n");
    let mut items = Vec::new();
    let z = z.map(|z| parse_arg(z, Flavor::Ring, n, "--z")).transpose()?;
    let mut alphas = Vec::new();
    for (p, ci) in points.iter().zip(&c) {
        let mut item = json!({"point": p.to_string(), "c": ci.to_string()});
        text += &format!("point={p}  c={ci}");
        if let Some(z) = &z {
            let alpha = ci * Q::from_integer(factorial(d as u32)) * z.evaluate(p.coords())?;
            text += &format!("  alpha={alpha}");
            item["alpha"] = Value::String(alpha.to_string());
            alphas.push(alpha);
        }
        text.push('\n');
        items.push(item);
    }
    let mut json = json!({"decomposable": true, "degree": d, "terms": items});
    if let Some(z) = &z {
        let holds = check_identity(&h, z, &points, &alphas)?;
        text += &format!("identity={holds}\n");
        json["identity"] = Value::Bool(holds);
    }
    Ok(Report::ok(text, json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(report) => {
            let rendered = match cli.output {
                Format::Text => report.text,
                Format::Json => {
                    serde_json::to_string_pretty(&report.json).expect("values serialize") + "\n"
                }
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
            match report.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Inconclusive => ExitCode::from(2),
                Status::Failed => ExitCode::from(1),
            }
        }
        Err(e) => {
            let inconclusive = e.downcast_ref::<Error>().is_some_and(Error::is_inconclusive);
            match cli.output {
                Format::Text => eprintln!("error: {e:#}"),
                Format::Json => println!("{}", json!({"error": format!("{e:#}"), "inconclusive": inconclusive})),
            }
            ExitCode::from(if inconclusive { 2 } else { 1 })
        }
    }
}
