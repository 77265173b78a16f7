use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use nestmaps_core::chern::{
    ctot_quotient, ctot_tautological, factorization_obstruction, quadric_gram_determinant, smoothness_certificate,
    theta, trunc_mul, verify_theta_identities, Obstruction,
};
use nestmaps_core::grassmann::{enumerate_subspaces, gaussian_binomial, incidence_graph};
use nestmaps_core::nesting::{
    classifier_sweep, find_bijective_nesting, hall_check, linear_nesting_classifier, symplectic_nesting_map,
};
use nestmaps_core::schwz::{classify_chern_splits, schwarzenberger_check_range, trace_form_identity};
use nestmaps_core::upoly::format_rational;
use nestmaps_core::{AlternatingForm, ChernCandidate, FieldSpec, MatGF};

use crate::{ChernCmd, Command, FieldArgs, GrassmannCmd, NestCmd, SchwCmd};

pub struct Report {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
    /// Secondary tab-separated file requested with `--export`.
    pub export: Option<(PathBuf, String)>,
    pub pass: bool,
}

impl Report {
    fn new(command: &str, text: String, body: impl Serialize, pass: bool) -> Result<Self> {
        let mut json = serde_json::to_value(body)?;
        let obj = json.as_object_mut().context("report body is an object")?;
        obj.insert("command".into(), json!(command));
        Ok(Report { text, json, csv: None, export: None, pass })
    }
}

fn big(n: &num_bigint::BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn build_field(a: &FieldArgs) -> Result<FieldSpec> {
    let f = match (a.q, a.p) {
        (Some(q), _) => FieldSpec::of_order(q)?,
        (None, Some(p)) => FieldSpec::new(p, a.k.unwrap_or(1), a.modulus.as_deref())?,
        (None, None) => bail!("specify the field with -q <order> or -p <prime> [-k <degree>] [--modulus ...]"),
    };
    Ok(f)
}

fn field_json(f: &FieldSpec) -> Value {
    json!({ "p": f.p(), "k": f.k(), "q": f.q(), "modulus": f.modulus() })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

fn parse_gram(field: &FieldSpec, n: usize, s: &str) -> Result<MatGF> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| r.split(',').map(|e| e.trim().parse::<i64>().with_context(|| format!("bad entry {e:?}"))).collect())
        .collect::<Result<_>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        bail!("Gram matrix must be {n} x {n}");
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Ok(MatGF::from_ints(field, &refs)?)
}

fn parse_s_range(s: Option<&str>, m: usize) -> Result<std::ops::RangeInclusive<i64>> {
    let Some(s) = s else { return Ok(0..=m as i64) };
    let (a, b) = s.split_once("..").ok_or_else(|| anyhow!("s range must look like a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty s range {s:?}");
    }
    Ok(a..=b)
}

fn candidate(coeffs: &[i64]) -> Result<ChernCandidate> {
    Ok(ChernCandidate::from_i64(coeffs)?)
}

pub fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Grassmann(c) => grassmann(c),
        Command::Nest(c) => nest(c),
        Command::Chern(c) => chern(c),
        Command::Schw(c) => schw(c),
    }
}

fn grassmann(cmd: &GrassmannCmd) -> Result<Report> {
    match cmd {
        GrassmannCmd::Count { field, n, i } => {
            let f = build_field(field)?;
            if *i > *n {
                bail!("need i <= n, got i = {i}, n = {n}");
            }
            let count = gaussian_binomial(*n, *i, u64::from(f.q()));
            let body = json!({ "field": field_json(&f), "n": n, "i": i, "count": big(&count) });
            let mut r = Report::new("grassmann count", format!("{count}\n"), body, true)?;
            r.csv = Some(format!("q,n,i,count\n{},{n},{i},{count}\n", f.q()));
            Ok(r)
        }
        GrassmannCmd::Enum { field, n, i } => {
            let f = build_field(field)?;
            let table = enumerate_subspaces(*n, *i, &f)?;
            let subspaces: Vec<Value> = table
                .iter()
                .map(|s| {
                    let b = s.basis();
                    let rows: Vec<Vec<String>> =
                        (0..b.rows()).map(|r| (0..b.cols()).map(|c| f.format(b.get(r, c))).collect()).collect();
                    json!({ "id": s.id(), "basis": rows })
                })
                .collect();
            let body = json!({ "field": field_json(&f), "n": n, "i": i, "count": table.len(), "subspaces": subspaces });
            Report::new("grassmann enum", table.to_tsv(), body, true)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MatchBody {
    field: Value,
    n: usize,
    i: usize,
    j: usize,
    left_count: usize,
    right_count: usize,
    edges: usize,
    matching_size: usize,
    perfect: bool,
    non_nesting_pairs: usize,
    verified: bool,
}

fn nest(cmd: &NestCmd) -> Result<Report> {
    match cmd {
        NestCmd::Match { field, n, i, j, export } => {
            let f = build_field(field)?;
            let inc = incidence_graph(*i, *j, *n, &f)?;
            let m = find_bijective_nesting(&inc);
            let non_nesting_pairs = m.count_non_nesting(inc.left(), inc.right())?;
            let perfect = m.is_perfect();
            let verified = perfect && non_nesting_pairs == 0;
            let body = MatchBody {
                field: field_json(&f),
                n: *n,
                i: *i,
                j: *j,
                left_count: inc.left().len(),
                right_count: inc.right().len(),
                edges: inc.edge_count(),
                matching_size: m.size(),
                perfect,
                non_nesting_pairs,
                verified,
            };
            let mut text = String::new();
            writeln!(text, "nesting Gr({i}, {n}) -> Gr({j}, {n}) over {f}")?;
            writeln!(text, "subspaces: {} -> {}, incidences: {}", body.left_count, body.right_count, body.edges)?;
            writeln!(text, "matching size: {}, perfect: {perfect}", m.size())?;
            writeln!(text, "non-nesting pairs: {non_nesting_pairs}")?;
            writeln!(text, "bijective nesting: {}", verdict(verified))?;
            let mut r = Report::new("nest match", text, body, verified)?;
            r.csv = Some(format!("left,right\n{}", m.to_tsv().replace('\t', ",")));
            r.export = export.clone().map(|p| (p, m.to_tsv()));
            Ok(r)
        }
        NestCmd::Hall { field, n, i, j, samples, seed } => {
            let f = build_field(field)?;
            let inc = incidence_graph(*i, *j, *n, &f)?;
            let h = hall_check(&inc, *samples, *seed)?;
            let mut text = String::new();
            writeln!(text, "Hall diagnostics for Gr({i}, {n}) -> Gr({j}, {n}) over {f}, seed {seed}")?;
            writeln!(text, "subsets checked: {}", h.checked_subsets)?;
            writeln!(text, "min slack |∪X| - k: {} (at k = {})", h.min_slack, h.min_slack_k)?;
            writeln!(text, "common degree N: {}", h.n_common)?;
            writeln!(text, "double count: {} pairs vs kN = {}, failures {}", h.double_count_pairs, h.k_n, h.double_count_failures)?;
            writeln!(text, "Hall inequality failures: {}", h.inequality_failures)?;
            writeln!(text, "result: {}", verdict(h.passed()))?;
            let mut r = Report::new("nest hall", text, &h, h.passed())?;
            let obj = r.json.as_object_mut().expect("object");
            obj.insert("field".into(), field_json(&f));
            for (k, v) in [("n", n), ("i", i), ("j", j), ("samples", samples)] {
                obj.insert(k.into(), json!(v));
            }
            obj.insert("seed".into(), json!(seed));
            Ok(r)
        }
        NestCmd::Perp { field, n, export } => {
            let f = build_field(field)?;
            let form = AlternatingForm::standard(&f, *n)?;
            let s = symplectic_nesting_map(&form)?;
            let verified = s.verified();
            let body = json!({
                "field": field_json(&f),
                "n": n,
                "lines": s.lines.len(),
                "hyperplanes": s.hyperplanes.len(),
                "matchingSize": s.matching.size(),
                "perfect": s.matching.is_perfect(),
                "nonNestingPairs": s.non_nesting_pairs,
                "involutionFailures": s.involution_failures,
                "verified": verified,
            });
            let mut text = String::new();
            writeln!(text, "perp map for the standard alternating form on {f}^{n}")?;
            writeln!(text, "lines: {}, hyperplanes: {}", s.lines.len(), s.hyperplanes.len())?;
            writeln!(text, "perfect: {}, non-nesting pairs: {}", s.matching.is_perfect(), s.non_nesting_pairs)?;
            writeln!(text, "perp(perp(l)) != l: {}", s.involution_failures)?;
            writeln!(text, "result: {}", verdict(verified))?;
            let mut r = Report::new("nest perp", text, body, verified)?;
            r.export = export.clone().map(|p| (p, s.matching.to_tsv()));
            Ok(r)
        }
        NestCmd::LinearCheck { field, n, gram } => {
            let f = build_field(field)?;
            match gram {
                Some(g) => {
                    let gram = parse_gram(&f, *n, g)?;
                    let c = linear_nesting_classifier(&gram, &f)?;
                    let text = format!(
                        "alternating: {}\nnesting on every line: {}\nagree: {}\n",
                        c.is_alternating,
                        c.is_nesting_exhaustive,
                        c.agrees()
                    );
                    let mut r = Report::new("nest linear-check", text, c, c.agrees())?;
                    let obj = r.json.as_object_mut().expect("object");
                    obj.insert("field".into(), field_json(&f));
                    obj.insert("n".into(), json!(n));
                    obj.insert("agrees".into(), json!(c.agrees()));
                    Ok(r)
                }
                None => {
                    let s = classifier_sweep(&f, *n)?;
                    let pass = s.disagreements == 0;
                    let text = format!(
                        "matrices: {}\ninvertible: {}\nalternating: {}\nnesting: {}\ndisagreements: {}\nresult: {}\n",
                        s.matrices,
                        s.invertible,
                        s.alternating,
                        s.nesting,
                        s.disagreements,
                        verdict(pass)
                    );
                    let mut r = Report::new("nest linear-check", text, s, pass)?;
                    let obj = r.json.as_object_mut().expect("object");
                    obj.insert("field".into(), field_json(&f));
                    obj.insert("n".into(), json!(n));
                    Ok(r)
                }
            }
        }
    }
}

fn chern(cmd: &ChernCmd) -> Result<Report> {
    match cmd {
        ChernCmd::Verify { d_max, i_max, n_max } => {
            let theta_result = verify_theta_identities(*d_max);
            let mut cases = 0;
            let mut failures = Vec::new();
            for i in 1..=*i_max {
                for n in i + 1..=*n_max {
                    let q = ctot_quotient(i, n)?;
                    let prod = trunc_mul(&q, &ctot_tautological(i, (n - i) as u32))?;
                    cases += 1;
                    if !prod.is_one() {
                        failures.push(json!({ "i": i, "n": n }));
                    }
                }
            }
            let pass = theta_result.is_ok() && failures.is_empty();
            let mismatch = theta_result.as_ref().err().map(|e| e.to_string());
            let mut text = String::new();
            match &mismatch {
                None => writeln!(text, "θ identities for d = 2..={d_max}: pass")?,
                Some(m) => writeln!(text, "θ identities: FAIL ({m})")?,
            }
            writeln!(text, "Whitney identity for i <= {i_max}, n <= {n_max}: {cases} cases, {} failures", failures.len())?;
            writeln!(text, "result: {}", verdict(pass))?;
            let body = json!({
                "dMax": d_max,
                "thetaIdentities": { "pass": mismatch.is_none(), "mismatch": mismatch },
                "whitney": { "iMax": i_max, "nMax": n_max, "cases": cases, "failures": failures },
                "pass": pass,
            });
            Report::new("chern verify", text, body, pass)
        }
        ChernCmd::Certificate { d_max } => {
            let chain = smoothness_certificate(*d_max)?;
            let det = quadric_gram_determinant(&theta(2, 3, 2))?;
            let pass = chain.pass && !det.is_zero();
            let mut text = String::new();
            writeln!(text, "gcd(θ_d(1, z), θ_(d-1)(1, z)) = 1 for d = 2..={d_max}: {}", verdict(chain.pass))?;
            for e in chain.entries.iter().filter(|e| e.gcd_degree > 0) {
                writeln!(text, "  d = {}: gcd of degree {}", e.d, e.gcd_degree)?;
            }
            writeln!(text, "Gram determinant of θ_2(x, y, z): {}", format_rational(&det))?;
            let mut csv = String::from("d,gcd_degree\n");
            for e in &chain.entries {
                writeln!(csv, "{},{}", e.d, e.gcd_degree)?;
            }
            let mut r = Report::new("chern certificate", text, &chain, pass)?;
            r.json.as_object_mut().expect("object").insert("gramDeterminant".into(), json!(format_rational(&det)));
            r.csv = Some(csv);
            Ok(r)
        }
        ChernCmd::Obstruction { n, i, j } => {
            let ob = factorization_obstruction(*n, *i, *j)?;
            let mut text = String::new();
            writeln!(text, "Gr({i}, {n}) -> Gr({j}, {n}):")?;
            let (body, pass) = match &ob {
                Obstruction::NoFactorization { degree, chain, homogenization_matches, gram_determinant } => {
                    writeln!(text, "homogenized quotient class is θ_{degree}: {homogenization_matches}")?;
                    writeln!(text, "boundary gcd chain to d = {degree}: {}", verdict(chain.pass))?;
                    if let Some(g) = gram_determinant {
                        writeln!(text, "Gram determinant of θ_2: {}", format_rational(g))?;
                    }
                    writeln!(text, "no factorization: the Chern class rules out a nesting map")?;
                    let body = json!({
                        "kind": "noFactorization",
                        "degree": degree,
                        "chainPass": chain.pass,
                        "homogenizationMatches": homogenization_matches,
                        "gramDeterminant": gram_determinant.as_ref().map(format_rational),
                        "rulesOut": true,
                    });
                    (body, true)
                }
                Obstruction::Unresolved { degree, chain, homogenization_matches } => {
                    writeln!(text, "certificate incomplete (chain {}, homogenization {homogenization_matches})", verdict(chain.pass))?;
                    let body = json!({
                        "kind": "unresolved",
                        "degree": degree,
                        "chainPass": chain.pass,
                        "homogenizationMatches": homogenization_matches,
                        "rulesOut": false,
                    });
                    (body, false)
                }
                Obstruction::ChernLevel { survivors, surviving_js, .. } => {
                    let js: Vec<String> = surviving_js.iter().map(usize::to_string).collect();
                    writeln!(text, "split degrees surviving the Chern-level filters for n = {n}: {{{}}}", js.join(", "))?;
                    match survivors.first() {
                        Some(e) => {
                            writeln!(text, "j = {j} survives: p = {}, q = {}", e.p_coeffs, e.q_coeffs)?;
                            if let Some(a) = &e.annotation {
                                writeln!(text, "note: {a}")?;
                            }
                        }
                        None => writeln!(text, "j = {j} is ruled out")?,
                    }
                    let body = json!({
                        "kind": "chernLevel",
                        "survivingJs": surviving_js,
                        "survivors": survivors,
                        "rulesOut": ob.rules_out(),
                    });
                    (body, true)
                }
            };
            let mut r = Report::new("chern obstruction", text, body, pass)?;
            let obj = r.json.as_object_mut().expect("object");
            for (k, v) in [("n", n), ("i", i), ("j", j)] {
                obj.insert(k.into(), json!(v));
            }
            Ok(r)
        }
    }
}

fn schw(cmd: &SchwCmd) -> Result<Report> {
    match cmd {
        SchwCmd::Check { poly, m, s } => {
            let c = candidate(poly)?;
            let range = parse_s_range(s.as_deref(), *m)?;
            let rep = schwarzenberger_check_range(&c, *m, range)?;
            let mut text = String::new();
            writeln!(text, "p(t) = {c}, rank {}, m = {m}", c.rank())?;
            let mut csv = String::from("s,value\n");
            for v in &rep.values {
                writeln!(text, "B_({},{m}) = {}", v.s, format_rational(&v.value))?;
                writeln!(csv, "{},{}", v.s, format_rational(&v.value))?;
            }
            writeln!(text, "integral: {}", verdict(rep.pass))?;
            let mut r = Report::new("schw check", text, &rep, rep.pass)?;
            r.csv = Some(csv);
            Ok(r)
        }
        SchwCmd::Classify { n } => {
            let table = classify_chern_splits(*n)?;
            let mut text = String::new();
            writeln!(text, "splittings of 1 + t + ... + t^{} into p q, p = c(Q) of rank n - j", n - 1)?;
            for e in &table.entries {
                let filters: Vec<String> = e
                    .filter_results
                    .iter()
                    .filter(|f| f.applicable)
                    .map(|f| {
                        let role = if matches!(f.factor, nestmaps_core::schwz::FactorRole::P) { "p" } else { "q" };
                        match (&f.witness_s, &f.witness_value) {
                            (Some(s), Some(v)) => format!("{role}: B_({s},{}) = {}", n - 1, format_rational(v)),
                            _ => format!("{role}: integral"),
                        }
                    })
                    .collect();
                writeln!(
                    text,
                    "j = {}: p = {}, q = {} [{}]{}",
                    e.j,
                    e.p_coeffs,
                    e.q_coeffs,
                    filters.join("; "),
                    if e.survivor { " survivor" } else { "" }
                )?;
                if let Some(a) = &e.annotation {
                    writeln!(text, "    {a}")?;
                }
            }
            let js = table.surviving_js();
            let shown: Vec<String> = js.iter().map(usize::to_string).collect();
            writeln!(text, "surviving j: {{{}}}", shown.join(", "))?;
            let csv = table.to_csv();
            let mut r = Report::new("schw classify", text, &table, true)?;
            r.json.as_object_mut().expect("object").insert("survivingJs".into(), json!(js));
            r.csv = Some(csv);
            Ok(r)
        }
        SchwCmd::Trace { poly, m } => {
            let c = candidate(poly)?;
            let rep = trace_form_identity(&c, *m)?;
            let mut text = String::new();
            writeln!(text, "p(t) = {c}, algebra Q[x]/({})", c.root_polynomial().format_with("x"))?;
            writeln!(text, "a = (1 - x)(-x)(-1 - x) vanishes: {}", rep.a_vanishes)?;
            let mut csv = String::from("i,trace,expected\n");
            for row in &rep.rows {
                let (t, e) = (format_rational(&row.trace), format_rational(&row.expected));
                writeln!(text, "i = {}: tr(a b_i) = {t}, (i+3)! B_(1,i+3) = {e}", row.i)?;
                writeln!(csv, "{},{t},{e}", row.i)?;
            }
            writeln!(text, "identity: {}", verdict(rep.pass))?;
            let mut r = Report::new("schw trace", text, &rep, rep.pass)?;
            r.csv = Some(csv);
            Ok(r)
        }
    }
}
