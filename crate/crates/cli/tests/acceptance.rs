//! One line per acceptance criterion; the test fails if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use holonomy_core::check::CheckOutcome;
use holonomy_core::cy::{verify_cy, verify_pair_relations};
use holonomy_core::dsl::{parse_form, parse_form_graded, parse_golden, print_form};
use holonomy_core::g2::{phi0, phi0_form, verify_g2_identities};
use holonomy_core::golden::{check_bundled, BUNDLED};
use holonomy_core::octonion::{verify_octonions, verify_witness};
use holonomy_core::sampling::{Sampler, DEFAULT_SEED};
use holonomy_core::scalar::Rational;
use holonomy_core::spin7::{is_cayley, psi0, psi0_form, split_from_3frame, verify_descent, verify_spin7, verify_triality};
use holonomy_core::suite::{g2_pairs, spin7_pairs, spin7_triples, standard_triality_table, RANDOM_FRAMES};
use holonomy_core::vector::Vector;
use serde_json::Value;

type Q = Rational;
type Criterion = Result<String, String>;

fn cli(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_holonomy")).args(args).output().expect("binary runs");
    (serde_json::from_slice(&out.stdout).expect("json"), out.status.code().unwrap_or(-1))
}

fn value(v: &Value, name: &str) -> Result<String, String> {
    v["outputs"]
        .as_array()
        .and_then(|os| os.iter().find(|o| o["name"] == name))
        .and_then(|o| o["value"].as_str())
        .map(str::to_string)
        .ok_or_else(|| format!("missing output {name}"))
}

fn expect_eq(what: &str, got: &str, want: &str) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got `{got}`, want `{want}`"))
    }
}

fn all_pass(outcomes: &[CheckOutcome], min_samples: usize) -> Result<(), String> {
    for o in outcomes {
        if !o.passed {
            return Err(format!("{} failed: {}", o.name, o.detail.clone().unwrap_or_default()));
        }
        if o.samples < min_samples {
            return Err(format!("{} ran on {} samples, need {min_samples}", o.name, o.samples));
        }
    }
    Ok(())
}

fn require(outcomes: &[CheckOutcome], names: &[&str]) -> Result<(), String> {
    for n in names {
        if !outcomes.iter().any(|o| o.name == *n) {
            return Err(format!("check {n} missing"));
        }
    }
    Ok(())
}

fn canonical(text: &str, n: usize) -> String {
    print_form(&parse_form(text, n).expect("literal parses"))
}

fn ac1() -> Criterion {
    let (v, code) = cli(&["induce", "cy", "--xi", "e7"]);
    if code != 0 {
        return Err(format!("induce cy --xi e7 exited {code}"));
    }
    expect_eq("ω", &value(&v, "omega")?, "e16 - e25 - e34")?;
    expect_eq("J e1", &value(&v, "j.e1")?, "-e6")?;
    expect_eq("J e2", &value(&v, "j.e2")?, "e5")?;
    expect_eq("J e3", &value(&v, "j.e3")?, "e4")?;
    expect_eq("Im Ω", &value(&v, "im_omega")?, "-e124 + e135 + e236 + e456")?;
    let (v, code) = cli(&["induce", "cy", "--xi", "e3"]);
    if code != 0 {
        return Err(format!("induce cy --xi e3 exited {code}"));
    }
    expect_eq("ω", &value(&v, "omega")?, "e12 - e47 - e56")?;
    expect_eq("J e1", &value(&v, "j.e1")?, "-e2")?;
    expect_eq("J e4", &value(&v, "j.e4")?, "e7")?;
    expect_eq("J e5", &value(&v, "j.e5")?, "e6")?;
    expect_eq("Im Ω", &value(&v, "im_omega")?, &canonical("e157 - e146 + e245 + e267", 7))?;
    Ok("ξ = e7 and ξ = e3 reproduce ω, J and Im Ω".into())
}

fn ac2() -> Criterion {
    for (gamma, printed) in [
        ("e4", "-e123 + e356 - e378 - e257 - e268 - e158 + e167"),
        ("e5", "e126 - e346 + e137 + e247 + e148 - e238 + e678"),
    ] {
        let (v, code) = cli(&["induce", "g2", "--gamma", gamma]);
        if code != 0 {
            return Err(format!("induce g2 --gamma {gamma} exited {code}"));
        }
        expect_eq(&format!("φ_{gamma}"), &value(&v, "phi")?, &canonical(printed, 8))?;
    }
    Ok("φ_e4 and φ_e5 match the printed expansions".into())
}

fn ac3() -> Criterion {
    let checks = check_bundled().map_err(|e| e.to_string())?;
    let mut counts = [0usize; 3];
    for c in &checks {
        let slot = ["chi.", "psi.", "upsilon."].iter().position(|p| c.key.starts_with(p));
        if let Some(i) = slot {
            if !c.passed {
                return Err(format!("{}: expected {} computed {}", c.key, c.expected, c.computed));
            }
            counts[i] += 1;
        }
    }
    if counts != [7, 7, 8] {
        return Err(format!("component counts {counts:?}"));
    }
    Ok("χ (7), ψ (7) and Υ (8) components match".into())
}

fn ac4() -> Criterion {
    let out = verify_g2_identities::<Q>(&phi0(), 200, DEFAULT_SEED);
    let mut names = vec![
        "metric_recovery",
        "phi_wedge_one_form",
        "star_phi_wedge_one_form",
        "contraction_wedge_phi",
        "star_wedge_star_phi",
        "double_cross",
        "cross_product_pairing",
        "psi_pairing",
        "associator",
    ];
    let grades: Vec<String> = (1..=4).map(|k| format!("star_contraction_grade_{k}")).collect();
    names.extend(grades.iter().map(String::as_str));
    require(&out, &names)?;
    all_pass(&out, 200)?;
    Ok(format!("{} G₂ identities on 200 samples", out.len()))
}

fn ac5() -> Criterion {
    let out = verify_cy::<Q>(&phi0(), 200, DEFAULT_SEED);
    require(
        &out,
        &[
            "complex_structure",
            "symplectic_compatibility",
            "phi_decomposition",
            "omega_cube",
            "star_re_omega",
            "star_phi_decomposition",
            "holomorphic_volume",
        ],
    )?;
    all_pass(&out, 200)?;
    Ok(format!("{} Calabi–Yau axioms on 200 unit ξ", out.len()))
}

fn ac6() -> Criterion {
    let g2p = g2_pairs(DEFAULT_SEED);
    let sp = spin7_pairs(DEFAULT_SEED);
    let tr = spin7_triples(DEFAULT_SEED);
    let pairs = verify_pair_relations::<Q>(&phi0(), &g2p);
    let s = psi0::<Q>();
    let descent = verify_descent::<Q>(&s, &sp);
    let triality = verify_triality::<Q>(&s, &tr);
    all_pass(&pairs, 2 + RANDOM_FRAMES)?;
    all_pass(&descent, 2 + RANDOM_FRAMES)?;
    all_pass(&triality, 3 + RANDOM_FRAMES)?;
    Ok(format!(
        "{} pair, {} descent, {} triality relations on coordinate plus {RANDOM_FRAMES} reflected frames",
        pairs.len(),
        descent.len(),
        triality.len()
    ))
}

fn ac7() -> Criterion {
    let w = verify_witness();
    all_pass(&w, 1)?;
    let oct = verify_octonions::<Q>(200, DEFAULT_SEED);
    require(&oct, &["norm_multiplicative"])?;
    all_pass(&oct, 200)?;
    Ok("witness found, stored and re-verified; norm multiplicative on 200 samples".into())
}

fn ac8() -> Criterion {
    let s = psi0::<Q>();
    let out = verify_spin7::<Q>(&s, 500, DEFAULT_SEED);
    require(&out, &["self_duality", "triple_cross_orthogonal", "psi_decomposition", "cayley_split"])?;
    all_pass(&out, 500)?;
    let e = |i| Vector::<Q>::basis(8, i);
    let split = split_from_3frame(&s, &e(1), &e(2), &e(3)).map_err(|x| x.to_string())?;
    if !(is_cayley(&s, &split.k).map_err(|x| x.to_string())? && is_cayley(&s, &split.d).map_err(|x| x.to_string())?) {
        return Err("standard split is not Cayley".into());
    }
    Ok(format!("{} Spin(7) identities on 500 samples; standard split Cayley", out.len()))
}

fn ac9() -> Criterion {
    let t = standard_triality_table().map_err(|e| e.to_string())?;
    let rows = t.labels().map(|r| r.join(" "));
    let dev = t.deviations();
    if dev.is_empty() {
        Ok(format!("table [{}] / [{}] agrees with the diagram", rows[0], rows[1]))
    } else {
        Err(format!("table [{}] / [{}] deviates at {dev:?}", rows[0], rows[1]))
    }
}

fn ac10() -> Criterion {
    let mut s = Sampler::new(DEFAULT_SEED);
    for i in 0..500 {
        let n = 7 + i % 2;
        let k = s.index(n + 1);
        let f = s.form(n, k);
        let text = print_form(&f);
        let back = parse_form_graded(&text, n, k).map_err(|e| format!("`{text}`: {e}"))?;
        if back != f {
            return Err(format!("round trip changed `{text}`"));
        }
    }
    let (_, src) = BUNDLED.iter().find(|(n, _)| *n == "structures.forms").ok_or("structures.forms missing")?;
    let entries = parse_golden(src).map_err(|e| e.to_string())?;
    for (key, want) in [("phi0", phi0_form::<Q>()), ("psi0", psi0_form::<Q>())] {
        let e = entries.iter().find(|e| e.key == key).ok_or(format!("{key} missing"))?;
        if parse_form(&e.text, e.dim).map_err(|x| x.to_string())? != want {
            return Err(format!("{key} literal differs from the constructed form"));
        }
    }
    Ok("500 forms round-trip; φ₀ and Ψ literals exact".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Criterion); 10] = [
        ("AC1 induced Calabi–Yau goldens", ac1),
        ("AC2 induced G₂ goldens", ac2),
        ("AC3 coordinate displays", ac3),
        ("AC4 G₂ identity suite", ac4),
        ("AC5 Calabi–Yau axioms", ac5),
        ("AC6 pair, descent and triality relations", ac6),
        ("AC7 octonion reconciliation", ac7),
        ("AC8 Spin(7) identities", ac8),
        ("AC9 triality table", ac9),
        ("AC10 parser round trip and literals", ac10),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match res {
            Ok(msg) => println!("[PASS] {name}: {msg}"),
            Err(msg) => {
                println!("[FAIL] {name}: {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
