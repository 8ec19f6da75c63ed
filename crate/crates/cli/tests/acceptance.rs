//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use qcoinv::exactnum::{EvalPoint, LaurentMatrix, LaurentPoly};
use qcoinv::lifting::{exactness, ComplexEntry, GradedComplex};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
}

fn qcoinv(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_qcoinv"))
        .args(args)
        .env_remove("QCOINV_CEILING")
        .env_remove("QCOINV_TIMINGS")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or(Value::Null)
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn suite<'a>(report: &'a Value, name: &str) -> Option<&'a Value> {
    report["suites"].as_array()?.iter().find(|s| s["suite"] == name)
}

fn suite_ok(report: &Value, name: &str) -> Result<String, String> {
    let s = suite(report, name).ok_or(format!("suite {name} missing"))?;
    let (p, t) = (s["passed"].as_u64().unwrap_or(0), s["total"].as_u64().unwrap_or(0));
    ensure(t > 0 && p == t, format!("{name} {p}/{t}"))?;
    Ok(format!("{name} {p}/{t}"))
}

fn records(report: &Value) -> Vec<Value> {
    report["degrees"].as_array().cloned().unwrap_or_default()
}

fn flag(rec: &Value, name: &str) -> Option<bool> {
    rec["flags"][name].as_bool()
}

fn experiment(args: &[&str]) -> Result<Value, String> {
    let mut full = vec!["verify"];
    full.extend_from_slice(args);
    let run = qcoinv(&full);
    ensure(run.code == 0, format!("`{}` exited {}", full.join(" "), run.code))?;
    let v = json(&run);
    ensure(v["verdict"] == "pass", format!("`{}` verdict {}", full.join(" "), v["verdict"]))?;
    Ok(v)
}

const INTERIOR: [&[&str]; 2] = [
    &["interior", "--m", "2", "--n", "2", "--t", "1", "--dmax", "4"],
    &["interior", "--m", "3", "--n", "3", "--t", "2", "--dmax", "2"],
];
const SLR: [&[&str]; 2] = [
    &["slr", "--n", "3", "--r", "2", "--dmax", "4"],
    &["slr", "--n", "4", "--r", "2", "--dmax", "4"],
];
const CONJUGATION: [&[&str]; 2] = [
    &["conjugation", "--n", "2", "--dmax", "6"],
    &["conjugation", "--n", "3", "--dmax", "3"],
];

struct Reports {
    interior: Vec<Value>,
    slr: Vec<Value>,
    conjugation: Vec<Value>,
}

fn c1() -> Outcome {
    let run = qcoinv(&["selftest", "--format", "json"]);
    let v = json(&run);
    let parts = ["associativity", "confluence", "det_centrality", "mu_homomorphism"]
        .iter()
        .map(|s| suite_ok(&v, s))
        .collect::<Result<Vec<_>, _>>()?;
    ensure(run.code == 0, format!("selftest exited {}", run.code))?;
    Ok(parts.join(", "))
}

fn c2() -> Outcome {
    let run = qcoinv(&["selftest", "--format", "json"]);
    suite_ok(&json(&run), "hopf_axioms")
}

fn c3(r: &Reports) -> Outcome {
    let mut notes = Vec::new();
    for rep in &r.interior {
        for rec in records(rep) {
            let d = rec["d"].as_u64().unwrap();
            ensure(flag(&rec, "fft_complex") == Some(true), format!("image not in coinvariants at {d}"))?;
            if d % 2 == 0 {
                ensure(
                    rec["dim_coinvariants"] == rec["dim_image"],
                    format!("coinvariants {} vs image {} at {d}", rec["dim_coinvariants"], rec["dim_image"]),
                )?;
            } else {
                ensure(rec["dim_coinvariants"].is_u64(), format!("odd degree {d} not reported"))?;
            }
        }
        let dims: Vec<String> = records(rep)
            .iter()
            .filter(|x| x["d"].as_u64().unwrap() % 2 == 0)
            .map(|x| x["dim_coinvariants"].to_string())
            .collect();
        notes.push(format!("{}: [{}]", rep["params"]["t"], dims.join(",")));
    }
    Ok(format!("coinvariant dims by t = {}", notes.join(" ")))
}

fn c4(r: &Reports) -> Outcome {
    for rep in &r.interior {
        for rec in records(rep).iter().filter(|x| x["source_degree"].is_u64()) {
            let d = rec["source_degree"].as_u64().unwrap();
            ensure(flag(rec, "sft_complex") == Some(true), format!("ideal not in kernel at {d}"))?;
            ensure(rec["dim_kernel"] == rec["dim_ideal"], format!("kernel vs ideal at {d}"))?;
        }
    }
    let anchor = records(&r.interior[0])
        .into_iter()
        .find(|x| x["source_degree"] == 2)
        .map(|x| x["dim_kernel"].clone());
    ensure(anchor == Some(Value::from(1)), format!("interior(2,2,1) degree-2 kernel {anchor:?}"))?;
    Ok("kernel = minor ideal in every degree; interior(2,2,1) degree-2 kernel 1".into())
}

fn c5(r: &Reports) -> Outcome {
    let mut notes = Vec::new();
    for rep in &r.slr {
        let recs = records(rep);
        for rec in &recs {
            ensure(rec["pass"] == true, format!("slr record d={} failed", rec["d"]))?;
            if rec["d"].as_u64().unwrap() <= 4 && rec["dim_coinvariants"].as_u64().unwrap_or(0) > 0 {
                ensure(flag(rec, "sl_membership_confirms") == Some(true), "membership not confirmed")?;
            }
        }
        let sat = recs
            .iter()
            .find(|x| x["source_degree"] == 3)
            .ok_or("no saturation record at lambda-degree 3")?;
        ensure(flag(sat, "sft_exact_generic") == Some(true), "degree-3 saturation failed")?;
        let k2 = recs.iter().find(|x| x["source_degree"] == 2).ok_or("no lambda-degree 2")?;
        notes.push(format!(
            "n={}: K2={} K3={}",
            rep["params"]["n"], k2["dim_kernel"], sat["dim_kernel"]
        ));
    }
    let checks = r.slr[1]["checks"].as_array().cloned().unwrap_or_default();
    let pl = checks.iter().find(|c| c["name"] == "plucker_in_kernel").ok_or("no Plucker check")?;
    ensure(pl["pass"] == true, "Plucker relation not in the q=1 kernel")?;
    Ok(notes.join(", ") + ", Plucker relation in q=1 kernel")
}

fn c6(r: &Reports) -> Outcome {
    for rep in &r.conjugation {
        for name in ["tau_coinvariant", "tau_commute", "tau_monomials_independent"] {
            let c = rep["checks"]
                .as_array()
                .and_then(|cs| cs.iter().find(|c| c["name"] == name).cloned())
                .ok_or(format!("check {name} missing"))?;
            ensure(c["pass"] == true, format!("{name}: {}", c["detail"]))?;
        }
        for rec in records(rep) {
            ensure(rec["dim_coinvariants"] == rec["dim_image"], format!("coinvariants vs image at {}", rec["d"]))?;
        }
    }
    let d4 = records(&r.conjugation[0])
        .into_iter()
        .find(|x| x["d"] == 4)
        .map(|x| x["dim_coinvariants"].clone());
    ensure(d4 == Some(Value::from(3)), format!("n=2 d=4 coinvariants {d4:?}"))?;
    Ok("tau coinvariant, commuting, independent; n=2 d=4 -> 3".into())
}

fn c7(r: &Reports) -> Outcome {
    let mut count = 0;
    for rep in r.interior.iter().chain(&r.slr).chain(&r.conjugation) {
        for rec in records(rep) {
            let lifting = rec["lifting"].as_object().cloned().unwrap_or_default();
            for (name, lr) in lifting {
                let odd_interior = rep["experiment"] == "interior" && rec["d"].as_u64().unwrap() % 2 == 1;
                ensure(flag(&rec, &format!("{name}_implication")) == Some(true), "implication violated")?;
                for e in lr["entries"].as_array().cloned().unwrap_or_default() {
                    if (e["at"] == "q=1" || e["at"] == "generic") && !odd_interior {
                        ensure(e["exact"] == true, format!("{name} at {} not exact, d={}", e["at"], rec["d"]))?;
                    }
                }
                count += 1;
            }
        }
    }
    let q_minus_1: LaurentPoly = "q - 1".parse().map_err(|_| "parse")?;
    let mut g = GradedComplex::new(["A", "B", "C"]);
    g.insert(
        ComplexEntry::new(0, LaurentMatrix::from_dense(vec![vec![q_minus_1]]), LaurentMatrix::zeros(0, 1))
            .map_err(|e| e.to_string())?,
    );
    let generic = exactness(&g, 0, &EvalPoint::Generic).map_err(|e| e.to_string())?;
    let at1 = exactness(&g, 0, &EvalPoint::q1()).map_err(|e| e.to_string())?;
    ensure(generic.entries[0].exact && !at1.entries[0].exact, "witness does not separate")?;
    Ok(format!("{count} complexes certified; [[q-1]] witness generic-exact, not exact at q=1"))
}

fn c8() -> Outcome {
    let mut n = 0;
    for args in INTERIOR.iter().chain(&SLR).chain(&CONJUGATION) {
        let mut full = vec!["baseline"];
        full.extend_from_slice(args);
        let run = qcoinv(&full);
        let v = json(&run);
        ensure(run.code == 0, format!("`{}` exited {}", full.join(" "), run.code))?;
        for c in v["checks"].as_array().cloned().unwrap_or_default() {
            ensure(c["pass"] == true, format!("{}: {}", c["name"], c["detail"]))?;
            n += 1;
        }
        if args[0] == "conjugation" {
            ensure(
                v["checks"].as_array().is_some_and(|cs| cs.iter().any(|c| c["name"] == "tau_specializes_to_trace")),
                "trace check missing",
            )?;
        }
    }
    Ok(format!("6 baselines, {n} checks"))
}

fn c9() -> Outcome {
    let a = qcoinv(&["verify", "interior", "--dmax", "3"]);
    let b = qcoinv(&["verify", "interior", "--dmax", "3"]);
    ensure(a.code == 0 && a.stdout == b.stdout, "verify output differs between runs")?;
    let s1 = qcoinv(&["selftest", "--seed", "42"]);
    let s2 = qcoinv(&["selftest", "--seed", "42"]);
    ensure(s1.code == 0 && s1.stdout == s2.stdout, "selftest output differs between runs")?;
    let mut caught = Vec::new();
    for fault in ["row-relation", "cross-term", "antipode-sign", "minor-sign"] {
        let run = qcoinv(&["selftest", "--x-fault", fault]);
        ensure(run.code == 1, format!("fault {fault} exited {}", run.code))?;
        let v = json(&run);
        let failed: Vec<String> = v["suites"]
            .as_array()
            .cloned()
            .unwrap_or_default()
            .iter()
            .filter(|s| s["passed"] != s["total"])
            .map(|s| s["suite"].as_str().unwrap_or("?").to_string())
            .collect();
        ensure(!failed.is_empty(), format!("fault {fault} went unnoticed"))?;
        caught.push(format!("{fault}->{}", failed.join("+")));
    }
    let guard = qcoinv(&["verify", "interior", "--m", "9", "--n", "9", "--t", "8", "--dmax", "6"]);
    ensure(guard.code == 2, format!("ceiling run exited {}", guard.code))?;
    Ok(format!("byte-identical reruns; {}", caught.join(" ")))
}

fn report(k: usize, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = took <= budget;
    let (ok, detail) = match out {
        Ok(d) if in_time => (true, d),
        Ok(d) => (false, format!("{d}; over budget {budget:?}")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {k} {}: {} ({:.1}s) {detail}",
        title,
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64()
    );
    ok
}

fn main() {
    let mut ok = true;
    ok &= report(1, "algebra core", Duration::from_secs(60), c1);
    ok &= report(2, "hopf axioms", Duration::from_secs(10), c2);

    let start = Instant::now();
    let collect = |set: &[&[&str]]| set.iter().map(|a| experiment(a)).collect::<Result<Vec<_>, _>>();
    let reports = (|| -> Result<Reports, String> {
        Ok(Reports {
            interior: collect(&INTERIOR)?,
            slr: collect(&SLR)?,
            conjugation: collect(&CONJUGATION)?,
        })
    })();
    let shared = start.elapsed();
    match reports {
        Ok(r) => {
            println!("experiments for criteria 3-7 ran in {:.1}s", shared.as_secs_f64());
            ok &= report(3, "interior coinvariants", Duration::from_secs(600), || c3(&r));
            ok &= report(4, "interior kernel", Duration::from_secs(600), || c4(&r));
            ok &= report(5, "slr", Duration::from_secs(600), || c5(&r));
            ok &= report(6, "conjugation", Duration::from_secs(600), || c6(&r));
            ok &= report(7, "lifting", Duration::from_secs(60), || c7(&r));
        }
        Err(e) => {
            for (k, title) in [(3, "interior coinvariants"), (4, "interior kernel"), (5, "slr"), (6, "conjugation"), (7, "lifting")] {
                println!("criterion {k} {title}: FAIL {e}");
            }
            ok = false;
        }
    }
    ok &= report(8, "classical baselines", Duration::from_secs(300), c8);
    ok &= report(9, "determinism and negative controls", Duration::from_secs(120), c9);
    println!("acceptance: {}", if ok { "PASS" } else { "FAIL" });
    if !ok {
        std::process::exit(1);
    }
}
