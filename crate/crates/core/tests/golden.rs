mod common;

use common::{check_line, context, golden_lines};

#[test]
fn published_relations_hold_and_match() {
    let mut failures = Vec::new();
    let mut compared = 0;
    for g in golden_lines() {
        let v = check_line(&context(&g.alg), &g);
        if g.misprint {
            if v.holds {
                failures.push(format!("misprint unexpectedly holds: {} {}", g.alg, g.text));
            }
            continue;
        }
        if !v.holds {
            failures.push(format!("does not hold: {} {} {}", g.alg, g.kind, g.text));
        }
        compared += v.matches_engine.is_some() as usize;
        if v.matches_engine == Some(false) {
            failures.push(format!("engine differs: {} {} {}", g.alg, g.kind, g.text));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    eprintln!("compared {compared} lines against the engine");
    assert!(compared >= 150, "only {compared} exact comparisons");
}

#[test]
fn corpus_covers_every_listed_algebra() {
    let algs: std::collections::BTreeSet<String> = golden_lines().into_iter().map(|g| g.alg).collect();
    for a in ["a2", "a3", "a4", "b2", "b3", "b4", "c2", "c3", "c4", "d3", "d4", "e6", "f4", "g2"] {
        assert!(algs.contains(a), "{a}");
    }
}
