//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the report reads top to bottom; exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use cyclic_srs::analysis::{is_c_defined, presuf_intersections};
use cyclic_srs::conjugacy::conjugacy_test;
use cyclic_srs::cyclic::{cyclic_steps, explore_allseq, rho, ExploreBudget, Rho, Tristate};
use cyclic_srs::{RewritingSystem, RuleId, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn timed(args: &[&str]) -> (Run, Duration) {
    let start = Instant::now();
    let run = cli(args);
    (run, start.elapsed())
}

fn records(stdout: &str) -> Vec<Value> {
    stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn criterion_1() -> Check {
    let ex22 = fixture_arg("ex22");
    let (allseq, t1) = timed(&["allseq", &ex22, "b c d"]);
    ensure(allseq.code == 0, format!("allseq exited {}", allseq.code))?;
    ensure(allseq.stdout.contains("terminates: no\n"), "allseq does not report terminates: no")?;
    let expected = "witness: b c d -> b d a ~2~ a b d -> b c d\n";
    ensure(allseq.stdout.contains(expected), format!("unexpected witness in\n{}", allseq.stdout))?;
    let (reduce, t2) = timed(&["cyclic-reduce", &ex22, "a c d"]);
    ensure(reduce.code == 0 && reduce.stdout == "a d a\n", format!("cyclic-reduce gave {:?}", reduce.stdout))?;
    ensure(t1 < Duration::from_secs(1) && t2 < Duration::from_secs(1), format!("too slow: {t1:?}, {t2:?}"))?;
    Ok(format!("witness exact, a c d -> a d a ({:?} + {:?})", t1, t2))
}

fn criterion_2() -> Check {
    let hm = load("hermiller_meier");
    let pairs = hm.check_local_confluence().map_err(|e| e.to_string())?;
    ensure(pairs.is_empty(), format!("{} critical pairs unresolved", pairs.len()))?;

    let path = fixture_arg("hermiller_meier");
    let audit = cli(&["--format", "structured", "audit", &path]);
    let recs = records(&audit.stdout);
    let inclusion = recs.iter().any(|r| {
        r["kind"] == "inclusion"
            && [r["r1"].as_str(), r["r2"].as_str()] == [Some("r1"), Some("r2")]
            && r["status"] == "fails"
    });
    ensure(inclusion, "no failing ab/ba inclusion in the audit")?;
    let verdict = recs.last().ok_or("empty audit")?;
    ensure(verdict["verdict"] == "not_confluent", format!("verdict {}", verdict["verdict"]))?;
    ensure(verdict["witness"] == "a b", format!("witness {}", verdict["witness"]))?;

    let out = temp_path("hm-plus.rsys");
    let out_arg = out.display().to_string();
    let complete = cli(&["--format", "structured", "complete", &path, "-o", &out_arg]);
    ensure(complete.code == 0, format!("complete exited {}: {}", complete.code, complete.stderr))?;
    let recs = records(&complete.stdout);
    let added: Vec<&Value> = recs.iter().filter(|r| r["kind"] == "added").collect();
    ensure(added.len() == 1, format!("{} reductions added", added.len()))?;
    let sides: BTreeSet<&str> = [added[0]["lhs"].as_str().unwrap(), added[0]["rhs"].as_str().unwrap()].into();
    ensure(sides == BTreeSet::from(["ab_", "ba_"]), format!("added {sides:?}"))?;

    let delta = cli(&["cyclic-reduce", &out_arg, "D a"]);
    ensure(
        delta.code == 1 && delta.stdout.starts_with("none: every reduction sequence stays in a cycle"),
        format!("D a gave {:?}", delta.stdout),
    )?;
    let classes = cli(&["--format", "structured", "classes", &out_arg, "--length", "2"]);
    let cycle = records(&classes.stdout).into_iter().any(|c| {
        let members: Vec<&str> = c["members"].as_array().unwrap().iter().map(|m| m.as_str().unwrap()).collect();
        members.contains(&"a D") && members.contains(&"b D") && c["has_cycle"] == true && c["has_irreducible"] == false
    });
    ensure(cycle, "no ~-cycle through a D and b D")?;
    let _ = std::fs::remove_file(out);
    Ok("no critical pairs, ab/ba inclusion, not_confluent at a b, one reduction ab_/ba_, D a has no form".into())
}

fn criterion_3() -> Check {
    let braid = load("braid");
    let budget = ExploreBudget::default();
    let report = explore_allseq(&braid, &word(&braid, "b a^2 b a"), budget);
    ensure(report.terminates == Tristate::No, "b a^2 b a should not terminate")?;
    let witness = report.nontermination_witness.as_ref().ok_or("no witness")?.render(&braid);
    ensure(witness == "b a a b a -> a b a a b ~1~ b a a b a", format!("witness {witness}"))?;
    ensure(report.converges == Tristate::Yes, "does not converge")?;
    let target = word(&braid, "a^3 b a");
    ensure(
        report.irreducible_forms.len() == 1 && report.irreducible_forms[0].is_cyclic_conjugate_of(&target),
        "form is not a rotation of a^3 b a",
    )?;
    for n in 2..=4 {
        let w = word(&braid, &format!("b a^{n} b a"));
        let expect = word(&braid, &format!("b a^{}", n + 2));
        match rho(&braid, &w, budget) {
            Rho::Unique { form, .. } if form.is_cyclic_conjugate_of(&expect) => {}
            other => return Err(format!("rho(b a^{n} b a) = {other:?}")),
        }
    }
    let run = cli(&["conjugate", &fixture_arg("braid"), "a", "b"]);
    ensure(run.code == 0 && run.stdout.starts_with("verdict: unknown"), format!("a vs b: {:?}", run.stdout))?;
    Ok("witness exact, unique form a^3 b a, rho(b a^n b a) = b a^(n+2) for n = 2..4, a/b unknown".into())
}

fn criterion_4() -> Check {
    let t = load("trefoil");
    let (xy, xz2x, xz3x) = (RuleId(0), RuleId(3), RuleId(4));
    let rule_text = |id: RuleId| t.render_rule(t.rule(id).unwrap());
    ensure(rule_text(xz2x) == "x z z x -> z x z y", format!("r4 is {}", rule_text(xz2x)))?;
    ensure(rule_text(xz3x) == "x z z z x -> z x z y y", format!("r5 is {}", rule_text(xz3x)))?;
    let w = word(&t, "y x z^2 x");
    let c = is_c_defined(&t, &w, xz2x, xy).map_err(|e| e.to_string())?;
    ensure(c == Some(word(&t, "x z^2 x y")), format!("witness {c:?}"))?;
    let c = is_c_defined(&t, &word(&t, "x z^2 x z^3"), xz2x, xz3x).map_err(|e| e.to_string())?;
    ensure(c.is_none(), "x z^2 x z^3 should not be c-defined")?;
    let audit = cli(&["--format", "structured", "audit", &fixture_arg("trefoil")]);
    let overlap = records(&audit.stdout).iter().any(|r| {
        r["kind"] == "overlap" && {
            let pair = BTreeSet::from([r["r1"].as_str().unwrap(), r["r2"].as_str().unwrap()]);
            pair == BTreeSet::from(["r4", "r5"])
        }
    });
    ensure(overlap, "no r4/r5 overlap in the audit")?;
    let (a, b) = presuf_intersections(&t, xz2x, xz3x).map_err(|e| e.to_string())?;
    let x = vec![word(&t, "x")];
    ensure(a == x && b == x, format!("presuf {a:?} / {b:?}"))?;
    Ok("x z^2 x y witness, no witness for x z^2 x z^3, r4/r5 overlap, presuf {x} both ways".into())
}

/// A random cyclic descendant of `u`, randomly rotated.
fn wander(system: &RewritingSystem, u: &Word, rng: &mut ChaCha8Rng) -> Word {
    let mut w = u.clone();
    for _ in 0..rng.gen_range(0..=4) {
        let steps = cyclic_steps(system, &w);
        if steps.is_empty() {
            break;
        }
        w = steps[rng.gen_range(0..steps.len())].target.clone();
    }
    if w.is_empty() {
        return w;
    }
    let k = rng.gen_range(0..w.len());
    w.rotate(k).unwrap()
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fixtures: Vec<RewritingSystem> = ["ex22", "hermiller_meier", "braid", "trefoil"].iter().map(|n| load(n)).collect();
    let budget = ExploreBudget::default();
    let (mut certified, mut failures) = (0, Vec::new());
    for trial in 0..500 {
        let system = if trial % 5 < 2 {
            fixtures[rng.gen_range(0..fixtures.len())].clone()
        } else {
            random_lp_system(&mut rng)
        };
        let letters = system.alphabet().len();
        let len = rng.gen_range(1..=6);
        let u = random_word(&mut rng, letters, len);
        let v = if rng.gen_bool(0.75) { wander(&system, &u, &mut rng) } else { random_word(&mut rng, letters, u.len()) };
        let verdict = conjugacy_test(&system, &u, &v, budget).map_err(|e| format!("trial {trial}: {e}"))?;
        let Some(cert) = verdict.certificate() else { continue };
        certified += 1;
        let rules = rules_of(&system);
        let complete = system.asserted_complete();
        let right = monoid_equal(&rules, &raw(&u.concat(&cert.x)), &raw(&cert.x.concat(&v)), complete);
        let left = monoid_equal(&rules, &raw(&cert.y.concat(&u)), &raw(&v.concat(&cert.y)), complete);
        if cert.u != u || cert.v != v || right != Some(true) || left != Some(true) {
            let al = system.alphabet();
            let rs: Vec<String> = system.rules().iter().map(|r| system.render_rule(r)).collect();
            failures.push(format!(
                "trial {trial}: {} / {} in {{{}}}, x = {}, y = {}, oracle {right:?} {left:?}",
                al.render(&u),
                al.render(&v),
                rs.join(", "),
                al.render(&cert.x),
                al.render(&cert.y)
            ));
        }
    }
    ensure(failures.is_empty(), format!("{} failures, first {}", failures.len(), failures.join("; ")))?;
    ensure(certified >= 100, format!("only {certified} certificates produced"))?;
    Ok(format!("500 trials, {certified} certificates independently verified"))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let (mut words, mut disagreements) = (0, Vec::new());
    for name in FIXTURES {
        let system = load(name);
        let rules = rules_of(&system);
        for w in small_words(system.alphabet().len(), 5, 3) {
            words += 1;
            let oracle = brute_force_allseq(&rules, &w);
            let report = explore_allseq(&system, &Word::from_indices(&w), ExploreBudget::default());
            let forms: BTreeSet<Raw> = report.irreducible_forms.iter().map(raw).collect();
            let terminates = match report.terminates {
                Tristate::Yes => Some(true),
                Tristate::No => Some(false),
                Tristate::Unknown => None,
            };
            let converges = match report.converges {
                Tristate::Yes => Some(true),
                Tristate::No => Some(false),
                Tristate::Unknown => None,
            };
            if terminates != Some(oracle.terminates) || converges != Some(oracle.converges()) || forms != oracle.forms {
                disagreements.push(format!("{name} {:?}", w));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(
        disagreements.is_empty(),
        format!("{} disagreements, e.g. {:?}", disagreements.len(), disagreements.first()),
    )?;
    ensure(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{words} words over {} fixtures agree ({elapsed:?})", FIXTURES.len()))
}

fn criterion_7() -> Check {
    let bin = env!("CARGO_BIN_EXE_cyclic-srs");
    for name in FIXTURES {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let (sys, log) = (temp_path("plus.rsys"), temp_path("log.txt"));
            let status = std::process::Command::new(bin)
                .arg("complete")
                .arg(fixture_path(name))
                .arg("-o")
                .arg(&sys)
                .arg("--log")
                .arg(&log)
                .output()
                .map_err(|e| e.to_string())?;
            let bytes = (std::fs::read(&sys).map_err(|e| e.to_string())?, std::fs::read(&log).map_err(|e| e.to_string())?);
            let _ = (std::fs::remove_file(sys), std::fs::remove_file(log));
            outputs.push((status.status.code(), bytes));
        }
        ensure(outputs[0] == outputs[1], format!("{name}: runs differ"))?;
    }
    Ok(format!("{} fixtures, logs and completed systems byte-identical", FIXTURES.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("1 cyclic termination example", criterion_1),
        ("2 five-generator braid presentation", criterion_2),
        ("3 braid monoid schema", criterion_3),
        ("4 trefoil presentation", criterion_4),
        ("5 certificate soundness", criterion_5),
        ("6 brute-force oracle agreement", criterion_6),
        ("7 completion determinism", criterion_7),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
