use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use rittkit_core::chevalley::{
    prime_lift_check, specialize_and_check, witness_algebraic, witness_chain, witness_transcendental,
    ConsistencyVerdict, Presentation,
};
use rittkit_core::difference::{fiber_nonempty, is_transformally_prime_principal, lift_obstruction, sigma_apply, SigmaPoly};
use rittkit_core::{
    characteristic_set, coherence_check, full_reduce, membership, parse_expression, parse_lines,
    parse_rational_function, parse_ring, wronskian as wr, AutoreducedSet, CharacteristicSet, DiffPolynomial,
    DiffVariable, Error, Membership, RingConfig, Specialization,
};

use crate::SetArgs;

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// A successful run: text and JSON renderings plus the exit status.
pub struct Outcome {
    command: &'static str,
    pub text: String,
    json: Value,
    pub exit: u8,
}

impl Outcome {
    fn ok(command: &'static str, text: String, json: Value) -> Self {
        Outcome {
            command,
            text,
            json,
            exit: 0,
        }
    }

    fn exit(mut self, code: u8) -> Self {
        self.exit = code;
        self
    }

    pub fn json_string(&self) -> String {
        let mut v = self.json.clone();
        v["schema"] = json!(1);
        v["command"] = json!(self.command);
        serde_json::to_string_pretty(&v).expect("json output")
    }
}

pub struct Failure {
    pub message: String,
    pub exit: u8,
}

impl Failure {
    pub fn usage(message: String) -> Self {
        Failure {
            message,
            exit: EXIT_USAGE,
        }
    }

    pub fn json_string(&self) -> String {
        let v = json!({"schema": 1, "error": self.message, "exit": self.exit});
        serde_json::to_string_pretty(&v).expect("json output")
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::Syntax { .. }
            | Error::UnknownVariable { .. }
            | Error::DerivationIndexOutOfRange { .. }
            | Error::InvalidRing(_)
            | Error::InvalidPresentation(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure {
            message: e.to_string(),
            exit,
        }
    }
}

type Run = Result<Outcome, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn ring(args: &SetArgs) -> Result<Arc<RingConfig>, Failure> {
    Ok(Arc::new(parse_ring(&args.ring)?))
}

fn polys(args: &SetArgs, ring: &Arc<RingConfig>) -> Result<Vec<DiffPolynomial>, Failure> {
    let mut out = Vec::new();
    for s in &args.set {
        out.push(parse_expression(s, ring)?);
    }
    if let Some(path) = &args.set_file {
        out.extend(parse_lines(&read(path)?, ring)?);
    }
    Ok(out)
}

fn autoreduced(args: &SetArgs, ring: &Arc<RingConfig>) -> Result<AutoreducedSet, Failure> {
    Ok(AutoreducedSet::new(ring, polys(args, ring)?)?)
}

fn strings(ps: &[DiffPolynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn theta_text(theta: &[u32]) -> String {
    let parts: Vec<String> = theta.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn reduce(args: &SetArgs, target: &str) -> Run {
    let r = ring(args)?;
    let a = autoreduced(args, &r)?;
    let g = parse_expression(target, &r)?;
    let cert = full_reduce(&g, &a)?;
    let mut text = String::new();
    writeln!(text, "remainder: {}", cert.remainder).unwrap();
    writeln!(text, "multiplier: {}", cert.multiplier).unwrap();
    writeln!(text, "m: {}", cert.m()).unwrap();
    for ((i, theta), q) in &cert.quotients {
        writeln!(text, "quotient member {i} theta {}: {q}", theta_text(theta)).unwrap();
    }
    let json = json!({
        "remainder": cert.remainder.to_string(),
        "certificate": cert.to_json(),
    });
    Ok(Outcome::ok("reduce", text, json))
}

pub fn charset(args: &SetArgs) -> Run {
    let r = ring(args)?;
    let f = polys(args, &r)?;
    match characteristic_set(&f)? {
        CharacteristicSet::Set(a) => {
            let members = strings(&a.polys());
            let mut text = String::new();
            for m in &members {
                writeln!(text, "{m}").unwrap();
            }
            Ok(Outcome::ok("charset", text, json!({"unit_ideal": false, "set": members})))
        }
        CharacteristicSet::UnitIdeal { witness } => Ok(Outcome::ok(
            "charset",
            format!("UnitIdeal (nonzero constant {witness})\n"),
            json!({"unit_ideal": true, "witness": witness.to_string()}),
        )
        .exit(EXIT_DOMAIN)),
    }
}

pub fn member(args: &SetArgs, target: &str) -> Run {
    let r = ring(args)?;
    let a = autoreduced(args, &r)?;
    let g = parse_expression(target, &r)?;
    let m = membership(&g, &a)?;
    let cert = m.certificate();
    let (verdict, text) = match &m {
        Membership::CertifiedMember(c) => ("CertifiedMember", format!("CertifiedMember (m = {})\n", c.m())),
        Membership::ReducedNonzero(c) => ("ReducedNonzero", format!("ReducedNonzero: {}\n", c.remainder)),
    };
    let json = json!({
        "verdict": verdict,
        "remainder": cert.remainder.to_string(),
        "certificate": cert.to_json(),
    });
    Ok(Outcome::ok("member", text, json))
}

fn variable_text(r: &Arc<RingConfig>, v: &DiffVariable) -> String {
    DiffPolynomial::variable(r, v.clone()).to_string()
}

pub fn coherent(args: &SetArgs) -> Run {
    let r = ring(args)?;
    let a = autoreduced(args, &r)?;
    let rep = coherence_check(&a)?;
    let mut text = format!("coherent: {}\n", rep.coherent);
    let mut pairs = Vec::new();
    for p in &rep.pairs {
        let lcd = variable_text(&r, &p.common_derivative);
        writeln!(
            text,
            "pair ({}, {}) at {lcd}: delta = {}, remainder = {}",
            p.first, p.second, p.delta, p.remainder
        )
        .unwrap();
        pairs.push(json!({
            "first": p.first,
            "second": p.second,
            "common_derivative": lcd,
            "delta": p.delta.to_string(),
            "remainder": p.remainder.to_string(),
        }));
    }
    Ok(Outcome::ok("coherent", text, json!({"coherent": rep.coherent, "pairs": pairs})))
}

pub fn witness(args: &SetArgs, target: Option<&str>, presentation: Option<&Path>) -> Run {
    let w = match presentation {
        Some(path) => witness_chain(&Presentation::from_json(&read(path)?)?)?,
        None => {
            let r = ring(args)?;
            let a = autoreduced(args, &r)?;
            let b = parse_expression(target.expect("clap requires a target"), &r)?;
            if a.is_empty() {
                witness_transcendental(&b)?
            } else {
                witness_algebraic(&a, &b)?
            }
        }
    };
    Ok(Outcome::ok(
        "witness",
        format!("witness: {w}\n"),
        json!({"witness": w.to_string()}),
    ))
}

fn specialization(r: &RingConfig, phi: &[String], tparams: &[String]) -> Result<Specialization, Failure> {
    let names: Vec<String> = if tparams.is_empty() {
        (1..=r.n_derivations().max(1)).map(|i| format!("t{i}")).collect()
    } else {
        tparams.to_vec()
    };
    let mut s = Specialization::new(names.clone());
    for item in phi {
        let (name, img) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("expected `param=image`, got `{item}`")))?;
        s.insert(name.trim(), parse_rational_function(img, &names)?);
    }
    Ok(s)
}

fn verdict_json(v: &ConsistencyVerdict) -> Value {
    match v {
        ConsistencyVerdict::Consistent => json!({"verdict": "Consistent"}),
        ConsistencyVerdict::Inconsistent(r) => json!({"verdict": "Inconsistent", "reason": r}),
        ConsistencyVerdict::Unknown(r) => json!({"verdict": "Unknown", "reason": r}),
    }
}

pub fn check(args: &SetArgs, target: &str, phi: &[String], tparams: &[String]) -> Run {
    let r = ring(args)?;
    let a = autoreduced(args, &r)?;
    let b = parse_expression(target, &r)?;
    let s = specialization(&r, phi, tparams)?;
    let v = specialize_and_check(&a, &b, &s)?;
    let exit = if matches!(v, ConsistencyVerdict::Inconsistent(_)) {
        EXIT_DOMAIN
    } else {
        0
    };
    Ok(Outcome::ok("check", format!("{v}\n"), verdict_json(&v)).exit(exit))
}

pub fn lift_test(args: &SetArgs, target: &str, witness: &str, trials: usize, seed: u64) -> Run {
    let r = ring(args)?;
    let a = autoreduced(args, &r)?;
    let b = parse_expression(target, &r)?;
    let w = parse_expression(witness, &r)?;
    let rep = prime_lift_check(&a, &b, &w, trials, seed)?;
    let mut text = String::new();
    writeln!(text, "trials: {}", rep.trials).unwrap();
    writeln!(text, "consistent: {}", rep.consistent).unwrap();
    writeln!(text, "inconsistent: {}", rep.inconsistent).unwrap();
    writeln!(text, "unknown: {}", rep.unknown).unwrap();
    writeln!(text, "rejected samples: {}", rep.rejected).unwrap();
    let mut failures = Vec::new();
    for f in &rep.failures {
        writeln!(text, "trial {} [{}]: {}", f.trial, f.phi, f.verdict).unwrap();
        let mut v = verdict_json(&f.verdict);
        v["trial"] = json!(f.trial);
        v["phi"] = json!(f.phi.to_string());
        failures.push(v);
    }
    let json = json!({
        "seed": seed,
        "trials": rep.trials,
        "consistent": rep.consistent,
        "inconsistent": rep.inconsistent,
        "unknown": rep.unknown,
        "rejected": rep.rejected,
        "failures": failures,
    });
    let exit = if rep.all_consistent() { 0 } else { EXIT_DOMAIN };
    Ok(Outcome::ok("lift-test", text, json).exit(exit))
}

pub fn wronskian(fs: &[String]) -> Run {
    let names = vec!["t".to_string()];
    let mut args = Vec::new();
    for f in fs {
        args.push(parse_rational_function(f, &names)?);
    }
    let w = wr(&args)?;
    let shown = w.display_with(&names).to_string();
    Ok(Outcome::ok("wronskian", format!("{shown}\n"), json!({"wronskian": shown})))
}

pub fn fiber(n: &str) -> Run {
    let value = parse_rational_function(n, &[])?
        .constant_value()
        .expect("no parameters");
    let rep = fiber_nonempty(&value);
    let mut text = String::from(if rep.nonempty { "nonempty\n" } else { "empty\n" });
    if let Some(w) = &rep.witness {
        writeln!(text, "witness: ({w})").unwrap();
    }
    for line in &rep.trace {
        writeln!(text, "  {line}").unwrap();
    }
    Ok(Outcome::ok("fiber", text, rep.to_json()))
}

pub fn sigma(poly: &str, transprime: bool) -> Run {
    let f = SigmaPoly::parse(poly)?;
    let s = sigma_apply(&f);
    let mut text = format!("sigma: {s}\n");
    let mut json = json!({"input": f.to_string(), "sigma": s.to_string()});
    if transprime {
        let t = is_transformally_prime_principal(&f)?;
        writeln!(text, "transformally prime: {t}").unwrap();
        json["transformally_prime"] = json!(t);
    }
    Ok(Outcome::ok("sigma", text, json))
}

pub fn demo_liftfail(target: &str) -> Run {
    let t = parse_rational_function(target, &["y".to_string()])?;
    let rep = lift_obstruction(&t)?;
    let mut text = String::new();
    for f in &rep.facts {
        writeln!(text, "  {f}").unwrap();
    }
    writeln!(text, "obstructed: {}", rep.obstructed).unwrap();
    writeln!(text, "conclusion: {}", rep.conclusion).unwrap();
    let json = serde_json::to_value(&rep).expect("report serializes");
    Ok(Outcome::ok("demo-liftfail", text, json))
}
