use std::collections::BTreeMap;

use kacpoly::algebra::{RationalFunction, Substitution};
use kacpoly::dimension::DimensionVector;
use kacpoly::hua::{
    coha_char_full, coha_char_nilp, dt_invariants, dual_hua_exponent, generator_dims, hua_exponent, kac_polynomials,
    strata as strata_rows, verify_orientation_independence, verify_parity, verify_positive_expansion, GeneratorTable,
    HuaError, KacTable,
};
use kacpoly::oracle::{count, OracleConfig, OracleError};
use kacpoly::quiver::{
    canonical_cut, jacobi_relations, shift_constants, triple as triple_quiver, Quiver, QuiverError,
};
use kacpoly::series::TruncatedSeries;
use num_rational::BigRational;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::report::{columns, header, integer, pass_fail, text_header, tsv, Report};
use crate::CliError;

/// Terms of the `q^{-1}` expansion inspected by the positivity check.
const EXPANSION_TERMS: usize = 40;

fn hua_error(e: HuaError) -> CliError {
    match e {
        HuaError::Quiver(q) => CliError::Input(q.to_string()),
        HuaError::ZeroBox => CliError::Input("--box must be nonzero".into()),
        other => CliError::Check(other.to_string()),
    }
}

fn oracle_error(e: OracleError) -> CliError {
    match e {
        OracleError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        OracleError::NonIntegral(_) => CliError::Check(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn quiver_error(e: QuiverError) -> CliError {
    match e {
        QuiverError::IdentityViolated { .. } => CliError::Check(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn generators_text(row: &BTreeMap<i64, BigInt>) -> String {
    if row.is_empty() {
        return "-".into();
    }
    row.iter().map(|(m, d)| format!("m={m}:{d}")).collect::<Vec<_>>().join(" ")
}

fn generators_json(row: &BTreeMap<i64, BigInt>) -> Value {
    Value::Object(row.iter().map(|(m, d)| (m.to_string(), integer(d))).collect())
}

struct KacData {
    table: KacTable,
    generators: GeneratorTable,
    nilp: TruncatedSeries,
    parity: bool,
}

fn kac_data(quiver: &Quiver, bound: &DimensionVector) -> Result<KacData, CliError> {
    let table = kac_polynomials(quiver, bound).map_err(hua_error)?;
    let generators = generator_dims(&table).map_err(hua_error)?;
    let nilp = coha_char_nilp(quiver, bound).map_err(hua_error)?;
    let parity = verify_parity(&nilp);
    Ok(KacData {
        table,
        generators,
        nilp,
        parity,
    })
}

fn records(data: &KacData, oracle_primes: &BTreeMap<DimensionVector, Vec<u32>>) -> Vec<Value> {
    let omega = dt_invariants(&data.table);
    data.table
        .entries
        .iter()
        .map(|(gamma, a)| {
            json!({
                "gamma": gamma.to_string(),
                "a": a.to_string(),
                "omega": omega[gamma].to_string(),
                "generators": generators_json(&data.generators.entries[gamma]),
                "flags": {
                    "integrality": true,
                    "parity": data.nilp.coefficient(gamma).is_even(),
                    "positivity": true,
                    "oracle_checked_primes": oracle_primes.get(gamma).cloned().unwrap_or_default(),
                },
            })
        })
        .collect()
}

fn kac_rows(data: &KacData) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["gamma".into(), "a_gamma".into(), "Omega_gamma".into(), "generators".into()]];
    let omega = dt_invariants(&data.table);
    for (gamma, a) in &data.table.entries {
        rows.push(vec![
            gamma.to_string(),
            a.to_string(),
            omega[gamma].to_string(),
            generators_text(&data.generators.entries[gamma]),
        ]);
    }
    rows
}

pub fn kac(quiver: &Quiver, bound: &DimensionVector) -> Result<Report, CliError> {
    let data = kac_data(quiver, bound)?;
    let mut json = header("kac", quiver, bound);
    json.insert("records".into(), Value::Array(records(&data, &BTreeMap::new())));
    json.insert("status".into(), json!(pass_fail(data.parity)));
    let rows = kac_rows(&data);
    let text = format!(
        "{}box {bound}\n\n{}\nchecks: integrality pass, positivity pass, parity {}\n",
        text_header(quiver),
        columns(&rows),
        pass_fail(data.parity)
    );
    Ok(Report {
        passed: data.parity,
        json: Value::Object(json),
        text,
        tsv: tsv(&rows),
    })
}

pub struct VerifyOptions {
    pub primes: Vec<u32>,
    pub config: OracleConfig,
    pub trials: usize,
    pub seed: u64,
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn compare(label: &str, oracle: &BigRational, formula: &BigRational) -> Option<String> {
    (oracle != formula).then(|| format!("{label}: oracle {oracle}, formula {formula}"))
}

fn evaluate(c: &RationalFunction, p: u32) -> Result<BigRational, CliError> {
    c.evaluate_q(&BigRational::from_integer(BigInt::from(p)))
        .map_err(|e| CliError::Check(format!("cannot evaluate {c} at q = {p}: {e}")))
}

pub fn verify(quiver: &Quiver, bound: &DimensionVector, opts: &VerifyOptions) -> Result<Report, CliError> {
    let data = kac_data(quiver, bound)?;
    let full = coha_char_full(quiver, bound).map_err(hua_error)?;
    let mut checks = Vec::new();

    let round_trip = data.nilp.log().and_then(|l| l.sym()).map(|s| s == data.nilp).unwrap_or(false);
    checks.push(Check::new("sym-log round trip", round_trip, "sym(log(H)) = H"));
    let direct = hua_exponent(&data.table).sym().map(|s| s == data.nilp).unwrap_or(false);
    checks.push(Check::new("hua identity", direct, "sym(sum a(q)/(q-1) x^g) = H"));
    let dual = dual_hua_exponent(&data.table)
        .sym()
        .map(|s| s == data.nilp.substitute(Substitution::Power(-1)))
        .unwrap_or(false);
    checks.push(Check::new("hua identity in q^-1", dual, "sym(sum a(q^-1)/(q^-1-1) x^g) = H(q^-1)"));
    checks.push(Check::new("parity", data.parity && verify_parity(&full), "no half-integral powers of q"));
    checks.push(Check::new(
        "positive expansion",
        verify_positive_expansion(&full, EXPANSION_TERMS),
        format!("full series, first {EXPANSION_TERMS} terms in q^-1"),
    ));

    let mut oracle_primes: BTreeMap<DimensionVector, Vec<u32>> = BTreeMap::new();
    for &p in &opts.primes {
        for gamma in bound.box_iter().skip(1) {
            let counts = count(quiver, &gamma, p, &opts.config).map_err(oracle_error)?;
            let a = data.table.get(&gamma).expect("every gamma in the box has an entry");
            let kac_oracle = BigRational::from_integer(counts.absolutely_indecomposable().map_err(oracle_error)?);
            let kac_formula = evaluate(&RationalFunction::from(a.clone()), p)?;
            let mismatches: Vec<String> = [
                compare("kac", &kac_oracle, &kac_formula),
                compare("nilpotent", &counts.nilpotent_pairs(), &evaluate(&data.nilp.coefficient(&gamma), p)?),
                compare("all pairs", &counts.all_pairs(), &evaluate(&full.coefficient(&gamma), p)?),
            ]
            .into_iter()
            .flatten()
            .collect();
            let ok = mismatches.is_empty();
            let detail = if ok { "kac, nilpotent and all-pairs counts agree".to_string() } else { mismatches.join("; ") };
            checks.push(Check::new(format!("oracle p={p} gamma={gamma}"), ok, detail));
            if ok {
                oracle_primes.entry(gamma).or_default().push(p);
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(opts.seed);
    let same = verify_orientation_independence(quiver, bound, opts.trials, &mut rng).map_err(hua_error)?;
    checks.push(Check::new(
        "orientation independence",
        same,
        format!("{} random reorientations, seed {}", opts.trials, opts.seed),
    ));

    let passed = checks.iter().all(|c| c.passed);
    let mut json = header("verify", quiver, bound);
    json.insert("primes".into(), json!(opts.primes));
    json.insert("records".into(), Value::Array(records(&data, &oracle_primes)));
    json.insert(
        "checks".into(),
        Value::Array(
            checks
                .iter()
                .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                .collect(),
        ),
    );
    json.insert("status".into(), json!(pass_fail(passed)));

    let mut rows = vec![vec!["check".to_string(), "result".into(), "detail".into()]];
    rows.extend(checks.iter().map(|c| vec![c.name.clone(), pass_fail(c.passed).into(), c.detail.clone()]));
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = format!(
        "{}box {bound}, primes {:?}\n\n{}\n{} checks, {failed} failed\n",
        text_header(quiver),
        opts.primes,
        columns(&rows),
        checks.len()
    );
    Ok(Report {
        passed,
        json: Value::Object(json),
        text,
        tsv: tsv(&rows),
    })
}

pub fn triple(quiver: &Quiver, gamma: &DimensionVector) -> Result<Report, CliError> {
    let t = triple_quiver(quiver).map_err(quiver_error)?;
    let cut = canonical_cut(&t.quiver).map_err(quiver_error)?;
    let relations = jacobi_relations(&t.potential, &cut).map_err(quiver_error)?;
    let (l, l_prime) = shift_constants(quiver, gamma).map_err(quiver_error)?;

    let mut json = header("triple", quiver, gamma);
    json.insert("tripled_quiver".into(), json!(t.quiver.serialize()));
    json.insert("tripled_hash".into(), json!(crate::report::quiver_hash(&t.quiver)));
    json.insert("potential".into(), json!(t.potential.to_string()));
    json.insert(
        "potential_terms".into(),
        Value::Array(
            t.potential
                .terms()
                .iter()
                .map(|(c, w)| json!({ "coefficient": c, "word": w }))
                .collect(),
        ),
    );
    json.insert("cut".into(), json!(cut.arrows().iter().collect::<Vec<_>>()));
    json.insert(
        "relations".into(),
        Value::Object(relations.iter().map(|(a, r)| (a.clone(), json!(r.to_string()))).collect()),
    );
    json.insert("shift".into(), json!({ "gamma": gamma.to_string(), "l": l, "l_prime": l_prime }));
    json.insert("status".into(), json!("pass"));

    let mut text = text_header(quiver);
    text.push_str("\n# tripled quiver\n");
    text.push_str(&t.quiver.serialize());
    text.push_str(&format!("\npotential: {}\n", t.potential));
    text.push_str(&format!("terms: {}\n", t.potential.terms().len()));
    text.push_str(&format!("cut: {cut}\n"));
    text.push_str("relations:\n");
    if relations.is_empty() {
        text.push_str("  (none)\n");
    }
    for (a, r) in &relations {
        text.push_str(&format!("  dW/d{a} = {r}\n"));
    }
    text.push_str(&format!("shift constants at {gamma}: l = {l}, l' = {l_prime}\n"));

    let mut rows = vec![vec!["kind".to_string(), "name".into(), "value".into()]];
    for a in t.quiver.arrows() {
        rows.push(vec!["arrow".into(), a.id.clone(), format!("{} {}", a.source, a.target)]);
    }
    for (c, w) in t.potential.terms() {
        rows.push(vec!["term".into(), w.join("·"), c.to_string()]);
    }
    for (a, r) in &relations {
        rows.push(vec!["relation".into(), a.clone(), r.to_string()]);
    }
    rows.push(vec!["shift".into(), gamma.to_string(), format!("{l} {l_prime}")]);

    Ok(Report {
        passed: true,
        json: Value::Object(json),
        text,
        tsv: tsv(&rows),
    })
}

pub fn strata(quiver: &Quiver, gamma: &DimensionVector) -> Result<Report, CliError> {
    let rows = strata_rows(quiver, gamma).map_err(hua_error)?;
    let expected = coha_char_nilp(quiver, gamma).map_err(hua_error)?.coefficient(gamma);
    let total = rows.last().map(|r| r.running_total.clone()).unwrap_or_else(RationalFunction::zero);
    let passed = total == expected;

    let mut json = header("strata", quiver, gamma);
    json.insert(
        "strata".into(),
        Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "pi": r.pi.to_string(),
                        "arrow_pairing": r.arrow_pairing,
                        "vertex_pairings": r.vertex_pairings,
                        "n_pi_weight": r.n_pi_weight.to_string(),
                        "c_pi": r.c_pi.to_string(),
                        "running_total": r.running_total.to_string(),
                    })
                })
                .collect(),
        ),
    );
    json.insert("total".into(), json!(total.to_string()));
    json.insert("status".into(), json!(pass_fail(passed)));

    let mut table = vec![vec![
        "pi".to_string(),
        "<pi,pi>".into(),
        "arrow pairing".into(),
        "n_pi".into(),
        "c_pi".into(),
        "running total".into(),
    ]];
    for r in &rows {
        let pairings: Vec<String> = r.vertex_pairings.iter().map(u64::to_string).collect();
        table.push(vec![
            r.pi.to_string(),
            pairings.join(","),
            r.arrow_pairing.to_string(),
            r.n_pi_weight.to_string(),
            r.c_pi.to_string(),
            r.running_total.to_string(),
        ]);
    }
    let text = format!(
        "{}gamma {gamma}, {} {}\n\n{}\ntotal = {total} ({} the series coefficient)\n",
        text_header(quiver),
        rows.len(),
        if rows.len() == 1 { "stratum" } else { "strata" },
        columns(&table),
        if passed { "matches" } else { "DIFFERS FROM" }
    );
    Ok(Report {
        passed,
        json: Value::Object(json),
        text,
        tsv: tsv(&table),
    })
}
