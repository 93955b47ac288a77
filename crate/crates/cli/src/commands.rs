use std::fmt::Write as _;
use std::path::Path;

use octica::coxeter::CoxeterDiagram;
use octica::cusp_cone::{
    conjugacy_classes, enumerate_anti_involutions, enumerate_isometries, format_angle, glue_cone,
    wedge_quotient,
};
use octica::data::{self, lattice_index, Dataset, LATTICE_NAMES};
use octica::fixed_points::{fix_lattice, verify_basis, ZQuadraticLattice};
use octica::lattices::{AntiIsometry, HermitianGaussLattice};
use octica::matrix::ZMat;
use octica::mod2::{
    classify_octic_type, cycle_type_with_transpositions, induced_involution, involution_invariants,
    s8_invariants, F2QuadraticSpace,
};
use octica::report::run_checks;
use octica::stabilizer::{solve_type_two, stab_structure, witness_conditions_hold, TypeTwoOutcome};
use octica::vinberg::{coxeter_diagram, vinberg, Stop, VinbergOptions};
use octica::Error;
use serde_json::{json, Value};

use crate::{Cli, Command, Format, LatticeAction};

pub struct Output {
    pub text: String,
    pub ok: bool,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Data(_)
            | Error::UnknownName(_)
            | Error::NonHermitian { .. }
            | Error::NotSquare { .. }
            | Error::Dimension { .. }
            | Error::NotTimelike(_)
            | Error::Indefinite
            | Error::MalformedCycleType(_)
            | Error::MalformedPairing(_)
            | Error::NotInvolutive
            | Error::NotAntiIsometry => 2,
            Error::NonTermination { .. } => 1,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Output, Failure>;

fn ok(text: String) -> CmdResult {
    Ok(Output { text, ok: true })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn load(cli: &Cli) -> Result<Dataset, Failure> {
    match &cli.data {
        Some(p) => Ok(data::load(p)?),
        None => Ok(data::reference_data()),
    }
}

fn chi_index(s: &str) -> Result<usize, Failure> {
    Ok(lattice_index(s)?)
}

pub fn run(cli: &Cli) -> CmdResult {
    let ds = load(cli)?;
    match &cli.command {
        Command::Lattice {
            action: LatticeAction::Show { name },
        } => lattice_show(cli, &ds, name),
        Command::Fix { chi } => fix(cli, &ds, chi_index(chi)?),
        Command::Vinberg {
            lattice,
            stop,
            format,
        } => vinberg_cmd(cli, &ds, lattice, stop, *format),
        Command::Diagram {
            lattice,
            format,
            reference,
        } => diagram_cmd(cli, &ds, lattice, *format, *reference),
        Command::Mod2 { chi } => mod2(cli, &ds, chi_index(chi)?),
        Command::S8Table => s8_table(cli),
        Command::Type2 { chi } => type2(cli, &ds, chi_index(chi)?),
        Command::ConeAngle => cone_angle(cli, &ds),
        Command::VerifyAll { only, no_timings } => verify_all(cli, &ds, only, *no_timings),
        Command::Man => unreachable!("handled before loading data"),
    }
}

fn hermitian(ds: &Dataset, name: &str) -> Result<Option<HermitianGaussLattice>, Failure> {
    Ok(match name.to_ascii_lowercase().as_str() {
        "lambda" | "λ" => Some(ds.data.lambda()?),
        "lz" => Some(ds.data.lz()?),
        _ => None,
    })
}

fn lattice_show(cli: &Cli, ds: &Dataset, name: &str) -> CmdResult {
    if let Some(l) = hermitian(ds, name)? {
        let (p, n) = l.signature();
        if cli.json {
            return ok(pretty(
                &json!({"name": name, "kind": "hermitian", "rank": l.rank(), "signature": [p, n], "gram": l.gram()}),
            ));
        }
        return ok(format!(
            "{name}: Hermitian lattice over Z[i], rank {}, signature ({p}, {n})\n{}",
            l.rank(),
            l.gram()
        ));
    }
    let i = lattice_index(name)?;
    let l = ds.data.fixed_lattice(i);
    let (p, n) = l.signature();
    let label = LATTICE_NAMES[i];
    if cli.json {
        return ok(pretty(
            &json!({"name": label, "kind": "quadratic", "rank": l.rank(), "signature": [p, n], "gram": l.gram}),
        ));
    }
    ok(format!(
        "{label}: integral quadratic lattice, rank {}, signature ({p}, {n})\n{}",
        l.rank(),
        l.gram
    ))
}

fn fix(cli: &Cli, ds: &Dataset, i: usize) -> CmdResult {
    let lam = ds.data.lambda()?;
    let chi = ds.data.anti(i);
    let computed = fix_lattice(&lam, &chi)?;
    let report = verify_basis(i, &lam, &chi, &ds.data.basis(i), ds.data.gram(i));
    let passed = report.passed();
    let basis = computed.embedding.clone().unwrap_or_default();
    if cli.json {
        let v = json!({
            "chi": i,
            "computed_basis": basis,
            "computed_gram": computed.gram,
            "reference_check": report,
            "pass": passed,
        });
        return Ok(Output {
            text: pretty(&v),
            ok: passed,
        });
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "Fix(Λ, χ{i}): rank {}, signature {:?}",
        computed.rank(),
        computed.signature()
    );
    let _ = writeln!(s, "computed basis (columns listed as rows):");
    for b in &basis {
        let cells: Vec<String> = b.iter().map(|z| z.to_string()).collect();
        let _ = writeln!(s, "  ({})", cells.join(", "));
    }
    let _ = writeln!(
        s,
        "computed Gram:\n{}",
        computed.gram.to_string().trim_end()
    );
    let show = |r: &Result<(), String>| r.clone().err().unwrap_or_else(|| "ok".into());
    let _ = writeln!(
        s,
        "stored B{i}: columns fixed {}",
        show(&report.columns_fixed)
    );
    let _ = writeln!(s, "stored B{i}: Gram = L{i} {}", show(&report.gram_matches));
    let idx = match &report.index_in_fix {
        Ok(x) | Err(x) => x.clone(),
    };
    let _ = writeln!(s, "stored B{i}: index in Fix {idx}");
    let _ = writeln!(s, "{}", if passed { "PASS" } else { "FAIL" });
    Ok(Output {
        text: s,
        ok: passed,
    })
}

/// A named fixed lattice (with its reference options) or a Gram file.
fn quadratic(
    ds: &Dataset,
    name: &str,
    threads: usize,
) -> Result<(String, ZQuadraticLattice, VinbergOptions), Failure> {
    if let Ok(i) = lattice_index(name) {
        return Ok((
            LATTICE_NAMES[i].to_string(),
            ds.data.fixed_lattice(i),
            ds.data.vinberg_options(i, threads),
        ));
    }
    let path = Path::new(name);
    if !path.exists() {
        return Err(Error::UnknownName(format!("lattice {name:?}")).into());
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::Data(format!("{name}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Error::Data(format!("{name}: {e}")))?;
    let gram_value = value.get("gram").cloned().unwrap_or(value);
    let gram: ZMat =
        serde_json::from_value(gram_value).map_err(|e| Error::Data(format!("{name}: {e}")))?;
    if !gram.is_square() {
        return Err(Error::NotSquare {
            rows: gram.rows(),
            cols: gram.cols(),
        }
        .into());
    }
    if !gram.is_symmetric() {
        return Err(Error::Data(format!("{name}: Gram matrix is not symmetric")).into());
    }
    let label = path
        .file_stem()
        .map_or("lattice".into(), |s| s.to_string_lossy().into_owned());
    Ok((
        label,
        ZQuadraticLattice::new(gram),
        VinbergOptions {
            threads,
            ..VinbergOptions::default()
        },
    ))
}

fn render(d: &CoxeterDiagram, name: &str, format: Format) -> String {
    match format {
        Format::Dot => d.to_dot(name),
        Format::Json => {
            let mut s = d.to_json();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        Format::Ascii => d.to_ascii(name),
    }
}

fn vinberg_cmd(cli: &Cli, ds: &Dataset, lattice: &str, stop: &str, format: Format) -> CmdResult {
    let (name, l, mut opts) = quadratic(ds, lattice, cli.threads)?;
    opts.stop = stop.parse::<Stop>()?;
    let run = vinberg(&l, &opts)?;
    let d = coxeter_diagram(&l, &run.roots)?;
    if cli.json || format == Format::Json {
        let v = json!({
            "lattice": name,
            "run": run,
            "diagram": d.to_spec(),
        });
        return ok(pretty(&v));
    }
    if format == Format::Dot {
        return ok(d.to_dot(&name));
    }
    let mut s = String::new();
    let v0: Vec<String> = run.v0.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(
        s,
        "{name}: v0 = ({}), allowed norms {:?}",
        v0.join(", "),
        run.allowed_norms
    );
    let _ = writeln!(
        s,
        "{} fundamental roots (searched to height {}):",
        run.roots.len(),
        run.searched_height
    );
    for (k, r) in run.roots.iter().enumerate() {
        let c: Vec<String> = r.coords.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            s,
            "  r{:<2} norm {:>3}  height {:>5}  ({})",
            k + 1,
            r.norm,
            r.height.to_string(),
            c.join(", ")
        );
    }
    s.push_str(&d.to_ascii(&name));
    ok(s)
}

fn diagram_cmd(
    cli: &Cli,
    ds: &Dataset,
    lattice: &str,
    format: Format,
    reference: bool,
) -> CmdResult {
    let format = if cli.json { Format::Json } else { format };
    if reference {
        let i = lattice_index(lattice)?;
        return ok(render(&ds.data.diagram(i)?, LATTICE_NAMES[i], format));
    }
    let (name, l, opts) = quadratic(ds, lattice, cli.threads)?;
    let run = vinberg(&l, &opts)?;
    ok(render(&coxeter_diagram(&l, &run.roots)?, &name, format))
}

fn mod2(cli: &Cli, ds: &Dataset, i: usize) -> CmdResult {
    let lam = ds.data.lambda()?;
    let sp = F2QuadraticSpace::from_lattice(&lam)?;
    let phi = induced_involution(&ds.data.anti(i))?;
    let inv = involution_invariants(&sp, &phi);
    let kind = classify_octic_type(inv)?;
    if cli.json {
        return ok(pretty(&json!({
            "chi": i,
            "phi_rows": phi.rows_string(),
            "dim_fix": inv.0,
            "norm_one_fixed": inv.1,
            "type": kind.name(),
        })));
    }
    ok(format!(
        "φ{i} on Λ/(1+i)Λ:\n{}\ndim Fix = {}, fixed vectors with q = 1: {}\ntype: {}\n",
        phi.rows_string().trim_end(),
        inv.0,
        inv.1,
        kind.name()
    ))
}

fn s8_table(cli: &Cli) -> CmdResult {
    let mut rows = Vec::new();
    for t in 0..5 {
        let ct = cycle_type_with_transpositions(t);
        let inv = s8_invariants(&ct)?;
        rows.push((t, ct, inv));
    }
    if cli.json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(t, ct, inv)| json!({"transpositions": t, "cycle_type": ct, "invariants": inv}))
            .collect();
        return ok(pretty(&Value::Array(v)));
    }
    let mut s =
        String::from("τ           dim Fix  q=1 fixed  fixed even  strictly fixed  classes\n");
    for (_, ct, inv) in &rows {
        let twos = ct.iter().filter(|&&c| c == 2).count();
        let name = if twos == 0 {
            "id".to_string()
        } else {
            (0..twos)
                .map(|k| format!("({}{})", 2 * k + 1, 2 * k + 2))
                .collect()
        };
        let _ = writeln!(
            s,
            "{:<11} {:>7}  {:>9}  {:>10}  {:>14}  {:>7}",
            name,
            inv.dim_fix,
            inv.norm_one_fixed,
            inv.fixed_even_subsets,
            inv.strictly_fixed_subsets,
            inv.fixed_classes
        );
    }
    ok(s)
}

fn describe_outcome(s: &mut String, out: &TypeTwoOutcome) {
    for a in &out.attempts {
        let what = a
            .certificate
            .as_ref()
            .map_or("witness".to_string(), |c| c.describe());
        let _ = writeln!(s, "  ε = {:+}: {what}", a.epsilon);
    }
    if let Some(w) = &out.witness {
        let _ = writeln!(
            s,
            "  T (T² = {}·I, det {}):\n{}",
            w.square_unit,
            w.det,
            indent(w.t.to_string().trim_end())
        );
    }
}

fn indent(t: &str) -> String {
    t.lines()
        .map(|l| format!("    {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn type2(cli: &Cli, ds: &Dataset, i: usize) -> CmdResult {
    let lam = ds.data.lambda()?;
    let stored = match (ds.data.lambda_roots(i), ds.data.symmetry(i)) {
        (Some(roots), Some(perm)) => {
            let out = solve_type_two(&lam, &roots, perm, None)?;
            let verified = out
                .witness
                .as_ref()
                .map(|w| witness_conditions_hold(&lam, w, &roots));
            Some((out, verified))
        }
        _ => None,
    };
    let report = stab_structure(&ds.data, i, cli.threads)?;
    if cli.json {
        let v = json!({
            "chi": i,
            "stored_roots": stored.as_ref().map(|(o, v)| json!({"outcome": o, "verified": v})),
            "structure": report.structure.name(),
            "report": report,
        });
        return ok(pretty(&v));
    }
    let mut s = String::new();
    if let Some((out, verified)) = &stored {
        let _ = writeln!(s, "χ{i}, stored roots and pairing:");
        describe_outcome(&mut s, out);
        if let Some(v) = verified {
            let _ = writeln!(
                s,
                "  conditions verified: {}",
                if *v { "yes" } else { "no" }
            );
        }
    }
    let _ = writeln!(
        s,
        "χ{i}, computed chamber: {} nontrivial diagram symmetries",
        report.symmetries
    );
    for out in &report.outcomes {
        describe_outcome(&mut s, out);
    }
    let _ = writeln!(s, "Stab(χ{i}) vs type I: {}", report.structure.name());
    ok(s)
}

fn cone_angle(cli: &Cli, ds: &Dataset) -> CmdResult {
    let d = &ds.data;
    let lz = d.lz()?;
    let group = enumerate_isometries(&lz)?;
    let k1 = AntiIsometry::new(d.kappa1.clone());
    let k3 = AntiIsometry::new(d.kappa3.clone());
    let antis = enumerate_anti_involutions(&lz, &group, &k1)?;
    let classes = conjugacy_classes(&group, &antis);
    let v = |n: &str| d.cone_vector(n).cloned();
    let (u1, u2, v2, v3) = (v("u1")?, v("u2")?, v("v2")?, v("v3")?);
    let w1 = wedge_quotient(&lz, &group, &k1, Some([u1.clone(), u2.clone()]))?;
    let w3 = wedge_quotient(&lz, &group, &k3, Some([v2.clone(), v3.clone()]))?;
    let cone = glue_cone(
        &group,
        vec![w1, w3],
        &[("v3", &v3, "u1", &u1), ("v2", &v2, "u2", &u2)],
    )?;
    let orbifold = cone.is_orbifold_angle();
    if cli.json {
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        return ok(pretty(&json!({
            "isometries": group.order(),
            "anti_involutions": antis.len(),
            "class_sizes": sizes,
            "cone": cone,
            "total_angle": cone.total_angle.to_string(),
            "orbifold": orbifold,
        })));
    }
    let mut s = String::new();
    let _ = writeln!(s, "|Isom(Lz)| = {}", group.order());
    let sizes: Vec<String> = classes.iter().map(|c| c.len().to_string()).collect();
    let _ = writeln!(
        s,
        "involutive anti-isometries: {} in {} classes ({})",
        antis.len(),
        classes.len(),
        sizes.join(" + ")
    );
    for (name, w) in ["κ1", "κ3"].iter().zip(&cone.wedges) {
        let _ = writeln!(
            s,
            "{name}: Fix Gram {}, stabilizer image of order {}, wedge angle {}",
            w.gram.to_string().replace('\n', " ").trim_end(),
            w.image.len(),
            format_angle(&w.angle)
        );
    }
    for id in &cone.identifications {
        let _ = writeln!(
            s,
            "{} ~ {}: {} witnesses",
            id.from,
            id.to,
            id.witnesses.len()
        );
    }
    let _ = writeln!(s, "total cone angle: {}", format_angle(&cone.total_angle));
    let _ = writeln!(
        s,
        "{} of the form π/k: {}",
        format_angle(&cone.total_angle),
        if orbifold {
            "yes, orbifold point"
        } else {
            "no, not an orbifold point"
        }
    );
    ok(s)
}

fn verify_all(cli: &Cli, ds: &Dataset, only: &[String], no_timings: bool) -> CmdResult {
    let mut report = run_checks(ds, only, cli.threads)?;
    if no_timings {
        report = report.without_timings();
    }
    let text = if cli.json {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        report.to_string()
    };
    Ok(Output {
        text,
        ok: report.pass,
    })
}
