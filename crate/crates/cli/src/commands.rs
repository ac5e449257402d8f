use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use chamber_basis::chambers::enumerate_chambers;
use chamber_basis::complexes::{
    aomoto_complex, cohomology_dims, exact_aomoto_dims, minimal_complex, tangent_cone_compare, CochainComplex,
    WeightVector,
};
use chamber_basis::fixtures::{fixture, Fixture};
use chamber_basis::geometry::{betti_vector, build_poset, Arrangement, Flag};
use chamber_basis::io::parse_input;
use chamber_basis::os_algebra::{format_scaled_lambda, subscript};
use chamber_basis::verify::{verify, Status, VerifyConfig};
use chamber_basis::{Error, Instance};

use crate::render::{self, one_based, point, set, strings};
use crate::{Cli, Command, Failure, Input, Weights};

pub struct Report {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

struct Loaded {
    arrangement: Arrangement,
    flag: Option<Flag>,
    fixture: Option<&'static Fixture>,
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let (text, fixture) = match (&input.fixture, &input.path) {
        (Some(name), _) => {
            let f = fixture(name).ok_or_else(|| Failure::UnknownFixture(name.clone()))?;
            (f.text.to_string(), Some(f))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            (text, None)
        }
        (None, None) => unreachable!("clap requires a path or a fixture"),
    };
    let (arrangement, flag) = parse_input(&text)?;
    Ok(Loaded {
        arrangement,
        flag,
        fixture,
    })
}

/// A flag given in the input is used as is; otherwise one is searched for.
fn build(loaded: &Loaded, seed: u64) -> Result<Instance, Failure> {
    let arr = loaded.arrangement.clone();
    Ok(match &loaded.flag {
        Some(f) => Instance::with_flag(arr, f)?,
        None => Instance::new(arr, None, seed)?,
    })
}

/// Display name of every chamber: its fixture label, or its sign vector.
fn chamber_names(inst: &Instance, fixture: Option<&Fixture>) -> Vec<String> {
    let st = &inst.stratification;
    let mut names: Vec<String> = st.chambers().iter().map(|c| c.sign_vector.to_string()).collect();
    if let Some(f) = fixture {
        for (label, id) in f.label_map(inst) {
            names[id] = label.to_string();
        }
    }
    names
}

fn stratum_names(inst: &Instance, names: &[String]) -> Vec<Vec<String>> {
    let st = &inst.stratification;
    (0..=st.dim())
        .map(|q| st.stratum(q).iter().map(|&c| names[c].clone()).collect())
        .collect()
}

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Poset(input) => poset(&load(input)?),
        Command::Chambers(input) => chambers(&load(input)?),
        Command::Strata(input) => {
            let l = load(input)?;
            strata(&l, &build(&l, cli.seed)?)
        }
        Command::Basis(input) => {
            let l = load(input)?;
            basis(&l, &build(&l, cli.seed)?)
        }
        Command::Constants(input) => {
            let l = load(input)?;
            constants(&l, &build(&l, cli.seed)?)
        }
        Command::Aomoto { input, weights } => {
            let l = load(input)?;
            complex_command(cli, &l, &build(&l, cli.seed)?, weights, true)
        }
        Command::Minimal { input, weights } => {
            let l = load(input)?;
            complex_command(cli, &l, &build(&l, cli.seed)?, weights, false)
        }
        Command::Compare { input, weights } => {
            let l = load(input)?;
            compare(cli, &l, &build(&l, cli.seed)?, weights)
        }
        Command::Verify { input, samples } => {
            let l = load(input)?;
            run_verify(cli, &l, &build(&l, cli.seed)?, *samples)
        }
    }
}

fn poset(l: &Loaded) -> Result<Report, Failure> {
    let poset = build_poset(&l.arrangement);
    let betti = betti_vector(&poset);
    let mut text = String::new();
    let mut flats = Vec::new();
    for p in 0..=poset.dim() {
        let level = poset.rank_level(p);
        let _ = writeln!(text, "rank {p}: {} flats", level.len());
        for &id in level {
            let f = poset.flat(id);
            let name = if p == 0 {
                "V".to_string()
            } else {
                format!("H{}", subscript(f.generators()))
            };
            let _ = writeln!(
                text,
                "  {name:<12} μ = {:>3}  through {}",
                poset.mobius(id),
                point(f.point())
            );
            flats.push(json!({
                "rank": p,
                "generators": one_based(f.generators()),
                "mobius": poset.mobius(id),
                "point": strings(f.point()),
            }));
        }
    }
    let poly = render::polynomial(&betti.coefficients);
    let _ = writeln!(text, "π(A,t) = {poly}");
    let _ = writeln!(text, "β = {}", betti.beta);
    let essential = chamber_basis::geometry::is_essential(&l.arrangement);
    let _ = writeln!(text, "essential: {essential}");
    Ok(Report {
        ok: true,
        text,
        json: json!({
            "flats": flats,
            "betti": betti.coefficients,
            "beta": betti.beta,
            "poincare": poly,
            "essential": essential,
        }),
    })
}

fn chambers(l: &Loaded) -> Result<Report, Failure> {
    let poset = build_poset(&l.arrangement);
    let betti = betti_vector(&poset);
    let ch = enumerate_chambers(&l.arrangement)?;
    let bounded = ch.iter().filter(|c| c.bounded).count();
    let total_ok = ch.len() as i64 == poset.poincare_at(1);
    let bounded_ok = bounded as u64 == betti.beta;
    let mut text = String::new();
    for c in &ch {
        let _ = writeln!(
            text,
            "{}  witness {}{}",
            c.sign_vector,
            point(&c.witness),
            if c.bounded { "  bounded" } else { "" }
        );
    }
    let mark = |ok: bool| if ok { "ok" } else { "MISMATCH" };
    let _ = writeln!(
        text,
        "chambers: {} (π(A,1) = {}) {}",
        ch.len(),
        poset.poincare_at(1),
        mark(total_ok)
    );
    let _ = writeln!(text, "bounded: {bounded} (β = {}) {}", betti.beta, mark(bounded_ok));
    let list: Vec<Value> = ch
        .iter()
        .map(|c| json!({ "sign_vector": c.sign_vector.to_string(), "witness": strings(&c.witness), "bounded": c.bounded }))
        .collect();
    Ok(Report {
        ok: total_ok && bounded_ok,
        text,
        json: json!({
            "chambers": list,
            "count": ch.len(),
            "bounded": bounded,
            "poincare_at_1": poset.poincare_at(1),
            "beta": betti.beta,
        }),
    })
}

fn flag_json(f: &Flag) -> Value {
    json!({
        "point": strings(f.basepoint()),
        "directions": f.directions().iter().map(|d| strings(d)).collect::<Vec<_>>(),
    })
}

fn strata(l: &Loaded, inst: &Instance) -> Result<Report, Failure> {
    let st = &inst.stratification;
    let names = chamber_names(inst, l.fixture);
    let f = st.flag();
    let mut text = String::new();
    let dirs: Vec<String> = f.directions().iter().map(|d| point(d)).collect();
    let _ = writeln!(
        text,
        "flag: point {}, directions {}",
        point(f.basepoint()),
        dirs.join(", ")
    );
    let mut records = Vec::new();
    for q in 0..=st.dim() {
        let _ = writeln!(
            text,
            "ch^{q} ({} chambers, b_{q} = {})",
            st.stratum(q).len(),
            inst.betti.get(q)
        );
        for &c in st.stratum(q) {
            let ch = st.chamber(c);
            let _ = writeln!(
                text,
                "  {:<6} {}  sgn {:+}  meets F^{q} at {}",
                names[c],
                ch.sign_vector,
                st.sgn(c),
                point(st.flag_witness(c))
            );
        }
    }
    for (c, r) in st.records().into_iter().enumerate() {
        let mut v = serde_json::to_value(r).expect("records serialize");
        v["name"] = json!(names[c]);
        records.push(v);
    }
    let sizes_ok = st
        .sizes()
        .iter()
        .zip(&inst.betti.coefficients)
        .all(|(&a, &b)| a as u64 == b);
    Ok(Report {
        ok: sizes_ok,
        text,
        json: json!({ "flag": flag_json(f), "sizes": st.sizes(), "betti": inst.betti.coefficients, "chambers": records }),
    })
}

fn basis(l: &Loaded, inst: &Instance) -> Result<Report, Failure> {
    let st = &inst.stratification;
    let b = &inst.basis;
    let names = chamber_names(inst, l.fixture);
    let mut text = String::new();
    let mut xi = Vec::new();
    let mut nu = Vec::new();
    for q in 0..=st.dim() {
        let tuples = b.tuples(q);
        let cols: Vec<String> = tuples
            .iter()
            .map(|m| if q == 0 { "1".to_string() } else { m.to_string() })
            .collect();
        let _ = writeln!(text, "ξ^{q}: rows ch^{q}, columns independent {q}-tuples");
        let width = st
            .stratum(q)
            .iter()
            .map(|&c| names[c].chars().count())
            .max()
            .unwrap_or(0);
        let _ = writeln!(text, "  {:width$}   {}", "", cols.join(" "));
        let matrix = b.xi_matrix(q);
        let mut rows = Vec::new();
        for (pos, &c) in st.stratum(q).iter().enumerate() {
            let cells: Vec<String> = matrix[pos]
                .iter()
                .zip(&cols)
                .map(|(v, h)| format!("{v:>w$}", w = h.chars().count()))
                .collect();
            let _ = writeln!(text, "  {:<width$} | {}", names[c], cells.join(" "));
            rows.push(json!({ "chamber": names[c], "sign_vector": st.chamber(c).sign_vector.to_string(), "entries": matrix[pos] }));
        }
        xi.push(json!({
            "degree": q,
            "columns": tuples.iter().map(|m| one_based(m.indices())).collect::<Vec<_>>(),
            "rows": rows,
        }));
    }
    let _ = writeln!(text, "ν:");
    for q in 0..=st.dim() {
        for &c in st.stratum(q) {
            let m = b.nu(c);
            let _ = writeln!(text, "  ν({}) = {m}", names[c]);
            let terms: Vec<Value> = m
                .terms()
                .iter()
                .map(|(mono, coef)| json!({ "indices": one_based(mono.indices()), "coefficient": coef.to_string() }))
                .collect();
            nu.push(json!({ "chamber": names[c], "degree": q, "terms": terms, "text": m.to_string() }));
        }
    }
    let integral = b.nu_is_integral();
    let _ = writeln!(text, "ν integral: {integral}");
    Ok(Report {
        ok: true,
        text,
        json: json!({ "xi": xi, "nu": nu, "nu_integral": integral }),
    })
}

fn constants(l: &Loaded, inst: &Instance) -> Result<Report, Failure> {
    let st = &inst.stratification;
    let sc = &inst.constants;
    let names = chamber_names(inst, l.fixture);
    let mut text = String::new();
    let mut entries = Vec::new();
    for q in 0..st.dim() {
        let _ = writeln!(text, "degree {q} -> {}:", q + 1);
        for e in sc.entries(q) {
            let deg = sc.degree_map(e.from, e.to);
            let _ = writeln!(
                text,
                "  Γ({}, {}) = {:<12} N = {:>2}  S = {}  deg = {deg}",
                names[e.from],
                names[e.to],
                format_scaled_lambda(e.n, &e.separating),
                e.n,
                set(&e.separating)
            );
            entries.push(json!({
                "degree": q,
                "from": names[e.from],
                "to": names[e.to],
                "from_sign_vector": st.chamber(e.from).sign_vector.to_string(),
                "to_sign_vector": st.chamber(e.to).sign_vector.to_string(),
                "n": e.n,
                "separating": one_based(&e.separating),
                "degree_map": deg,
            }));
        }
    }
    Ok(Report {
        ok: true,
        text,
        json: json!({ "entries": entries }),
    })
}

fn parse_weights(w: &Weights, n: usize) -> Result<WeightVector, Failure> {
    let lambda = WeightVector::parse(&w.lambda)?;
    if lambda.len() != n {
        return Err(Error::DimensionMismatch {
            context: "--lambda".into(),
            expected: n,
            found: lambda.len(),
        }
        .into());
    }
    Ok(lambda)
}

fn write_csv(dir: &Path, cx: &CochainComplex, prefix: &str) -> Result<Vec<String>, Failure> {
    let io = |e: std::io::Error| Failure::Io {
        path: dir.to_path_buf(),
        message: e.to_string(),
    };
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    for q in 0..cx.differentials.len() {
        let path = dir.join(format!("{prefix}_d{q}.csv"));
        fs::write(&path, cx.to_csv(q)).map_err(io)?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

fn weights_json(w: &WeightVector) -> Value {
    match w.exact_values() {
        Some(e) => json!(strings(e)),
        None => Value::Array(w.values().iter().map(|&z| render::complex_json(z)).collect()),
    }
}

fn complex_command(cli: &Cli, l: &Loaded, inst: &Instance, w: &Weights, aomoto: bool) -> Result<Report, Failure> {
    let lambda = parse_weights(w, inst.n())?;
    let sc = &inst.constants;
    let (cx, label) = if aomoto {
        (aomoto_complex(sc, &lambda)?, "aomoto")
    } else {
        (minimal_complex(sc, &lambda)?, "minimal")
    };
    let report = match (aomoto && cli.exact, lambda.exact_values()) {
        (true, Some(e)) => exact_aomoto_dims(sc, e)?,
        (true, None) => {
            return Err(Error::InvalidWeights("--exact needs rational weights".into()).into());
        }
        (false, _) => cohomology_dims(&cx, cli.tolerance)?,
    };
    let names = stratum_names(inst, &chamber_names(inst, l.fixture));
    let mut text = String::new();
    let _ = writeln!(text, "{label} complex at λ = ({})", w.lambda);
    text.push_str(&render::complex_text(&cx, &names));
    text.push_str(&render::betti_text("cohomology", &report));
    let mut csv = Vec::new();
    if let Some(dir) = &w.csv_dir {
        csv = write_csv(dir, &cx, label)?;
        for p in &csv {
            let _ = writeln!(text, "wrote {p}");
        }
    }
    Ok(Report {
        ok: true,
        text,
        json: json!({
            "weights": weights_json(&lambda),
            "complex": render::complex_json_value(&cx, &names),
            "cohomology": report,
            "csv": csv,
        }),
    })
}

fn compare(cli: &Cli, _l: &Loaded, inst: &Instance, w: &Weights) -> Result<Report, Failure> {
    let lambda = parse_weights(w, inst.n())?;
    let r = tangent_cone_compare(&inst.constants, &lambda, cli.tolerance, cli.exact)?;
    let ok = !r.in_small_regime || r.agree;
    let mut text = String::new();
    let _ = writeln!(text, "λ = ({})", w.lambda);
    text.push_str(&render::betti_text("minimal", &r.minimal));
    text.push_str(&render::betti_text("aomoto", &r.aomoto));
    let _ = writeln!(
        text,
        "in_small_regime: {} (|λ_i| < 1/{})",
        r.in_small_regime,
        2 * (inst.n() + 1)
    );
    let _ = writeln!(text, "agree: {}", r.agree);
    if let Some(dir) = &w.csv_dir {
        write_csv(dir, &minimal_complex(&inst.constants, &lambda)?, "minimal")?;
        write_csv(dir, &aomoto_complex(&inst.constants, &lambda)?, "aomoto")?;
    }
    Ok(Report {
        ok,
        text,
        json: json!({ "weights": weights_json(&lambda), "report": r }),
    })
}

fn run_verify(cli: &Cli, l: &Loaded, inst: &Instance, samples: usize) -> Result<Report, Failure> {
    let config = VerifyConfig {
        tolerance: cli.tolerance,
        seed: cli.seed,
        samples,
        complex_samples: 10 * samples,
    };
    let report = verify(inst, l.fixture, &config);
    let mut text = String::new();
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        };
        let _ = writeln!(text, "[{tag}] {}: {}", c.name, c.detail);
    }
    if !report.fixture_rows.is_empty() {
        let _ = writeln!(text, "tables:");
        for r in &report.fixture_rows {
            let mark = if r.matches { "ok" } else { "MISMATCH" };
            let _ = write!(text, "  {mark:<8} {} = {}", r.key, r.computed);
            if !r.matches {
                let _ = write!(text, "  (expected {})", r.expected);
            }
            text.push('\n');
        }
    }
    let ok = report.passed();
    let _ = writeln!(text, "{}", if ok { "all checks passed" } else { "some checks FAILED" });
    Ok(Report {
        ok,
        text,
        json: serde_json::to_value(&report).expect("report serializes"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("chamber-basis").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn fixture_chambers_use_labels() {
        let r = run(&cli(&["strata", "--fixture", "fig1"])).unwrap();
        assert!(r.ok);
        assert!(r.text.contains("B4"));
        assert_eq!(r.json["sizes"], json!([1, 4, 5]));
    }

    #[test]
    fn unknown_fixture_fails() {
        let e = run(&cli(&["poset", "--fixture", "missing"])).err().unwrap();
        assert_eq!(e.exit_code(), 4);
    }

    #[test]
    fn poset_reports_beta() {
        let r = run(&cli(&["poset", "--fixture", "fig1"])).unwrap();
        assert_eq!(r.json["beta"], 2);
        assert_eq!(r.json["poincare"], "1 + 4t + 5t^2");
    }
}
