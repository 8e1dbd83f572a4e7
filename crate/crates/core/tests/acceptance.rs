//! Exit criteria. Each criterion prints one PASS/FAIL line with its runtime;
//! the process fails if any criterion fails or exceeds its time budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use carryset::explorer::{
    scan_associativity, search_closed_subsets, search_closed_subsets_with_workers, SubsetStatus,
};
use carryset::{
    approx_add, approx_stats, assoc_witness, invert, iterated_add, knuth_sum, oplus, solve,
    stretch, FinSet, Natural,
};

type Check = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn set(elems: &[usize]) -> FinSet {
    elems.iter().copied().collect()
}

fn subsets_below(n: u32) -> impl Iterator<Item = FinSet> {
    (0..1u64 << n).map(FinSet::from_word)
}

fn paper_examples() -> Check {
    let (a, c) = (set(&[0]), set(&[1]));
    let left = oplus(&oplus(&a, &a), &c);
    let right = oplus(&a, &oplus(&a, &c));
    ensure!(left == set(&[2]), "(A ⊕ A) ⊕ C = {left}");
    ensure!(right.is_empty(), "A ⊕ (A ⊕ C) = {right}");

    ensure!(invert(&set(&[0])) == set(&[0, 1]), "inverse of {{0}}");
    for n in 0..16 {
        ensure!(invert(&set(&[n])) == set(&[n, n + 1]), "inverse of {{{n}}}");
    }
    ensure!(
        invert(&set(&[3, 4, 5])) == set(&[3, 5, 6]),
        "inverse of {{3,4,5}}"
    );
    let fig = set(&[3, 4, 5, 10, 12]);
    let fig_inv = set(&[3, 5, 6, 10, 11, 12, 13]);
    ensure!(
        invert(&fig) == fig_inv,
        "inverse of {fig} is {}",
        invert(&fig)
    );

    for (s, n, want) in [
        (&fig, 5, 3),
        (&fig, 12, 1),
        (&fig_inv, 11, 2),
        (&fig_inv, 4, 0),
    ] {
        let got = stretch(s, n).get();
        ensure!(got == want, "stretch({s}, {n}) = {got}, want {want}");
    }
    Ok(())
}

fn inverse_exhaustive() -> Check {
    let mut count = 0;
    for a in subsets_below(12) {
        let inv = invert(&a);
        ensure!(oplus(&a, &inv).is_empty(), "{a} ⊕ {inv} ≠ ∅");
        if !a.is_empty() {
            ensure!(inv.min_element() == a.min_element(), "min of {inv} vs {a}");
        }
        count += 1;
    }
    ensure!(count == 4096, "checked {count} sets");
    Ok(())
}

fn uniqueness_scan() -> Check {
    let candidates: Vec<FinSet> = subsets_below(10).collect();
    for a in subsets_below(8) {
        // hits[B] = every X ⊆ [0,10) with A ⊕ X = B, for B ⊆ [0,8).
        let mut hits: Vec<Vec<&FinSet>> = vec![Vec::new(); 256];
        for x in &candidates {
            if let Some(w) = oplus(&a, x).to_word().filter(|&w| w < 256) {
                hits[w as usize].push(x);
            }
        }
        for (w, xs) in hits.iter().enumerate() {
            let b = FinSet::from_word(w as u64);
            ensure!(xs.len() == 1, "A={a} B={b}: {} solutions", xs.len());
            let solved = solve(&a, &b);
            ensure!(
                *xs[0] == solved,
                "A={a} B={b}: scan {} vs solve {solved}",
                xs[0]
            );
            if b.is_empty() {
                ensure!(solved == invert(&a), "A={a}: solve(A, ∅) ≠ invert(A)");
            }
        }
    }
    Ok(())
}

fn knuth_identity() -> Check {
    for a in 0..1u64 << 10 {
        for b in 0..1u64 << 10 {
            ensure!((a ^ b) + ((a & b) << 1) == a + b, "identity at ({a},{b})");
            ensure!(knuth_sum(&a, &b) == a + b, "knuth_sum({a},{b})");
        }
    }
    Ok(())
}

fn one_round_correspondence() -> Check {
    let sets: Vec<FinSet> = subsets_below(8).collect();
    let codes: Vec<Natural> = sets.iter().map(FinSet::encode).collect();
    for (a, ea) in sets.iter().zip(&codes) {
        for (b, eb) in sets.iter().zip(&codes) {
            ensure!(
                oplus(a, b).encode() == approx_add(ea, eb),
                "encode({a} ⊕ {b}) ≠ approx_add({ea}, {eb})"
            );
        }
    }
    Ok(())
}

fn carry_iteration() -> Check {
    for a in 0..1u64 << 10 {
        for b in 0..1u64 << 10 {
            let (sum, rounds) = iterated_add(&a, &b);
            ensure!(sum == a + b, "iterated_add({a},{b}) = {sum}");
            ensure!(rounds <= 11, "iterated_add({a},{b}) took {rounds} rounds");
        }
    }
    Ok(())
}

fn algebraic_laws() -> Check {
    let sets: Vec<FinSet> = subsets_below(9).collect();
    let empty = FinSet::empty();
    for a in &sets {
        ensure!(oplus(a, &empty) == *a, "{a} ⊕ ∅");
        ensure!(oplus(&empty, a) == *a, "∅ ⊕ {a}");
        ensure!(oplus(a, a) == a.shift_up(1), "{a} ⊕ {a}");
        for b in &sets {
            ensure!(oplus(a, b) == oplus(b, a), "{a} ⊕ {b} not commutative");
            ensure!(a.sym_diff(b).is_empty() == (a == b), "Fact 1 at ({a},{b})");
        }
    }
    Ok(())
}

fn report_lines(reports: &[carryset::SubsetReport]) -> String {
    reports
        .iter()
        .map(|r| serde_json::to_string(r).unwrap() + "\n")
        .collect()
}

fn explorer_theorems() -> Check {
    let scan = scan_associativity(2).map_err(|e| e.to_string())?;
    let w = scan.first_witness.ok_or("no witness at bound 2")?;
    ensure!(
        (w.a.clone(), w.b.clone(), w.c.clone()) == (set(&[0]), set(&[0]), set(&[1])),
        "first witness ({}, {}, {})",
        w.a,
        w.b,
        w.c
    );
    ensure!(w.left == set(&[2]) && w.right.is_empty(), "witness values");

    let reports = search_closed_subsets(4, 16).map_err(|e| e.to_string())?;
    ensure!(
        reports.len() == 1 << 15,
        "{} candidates at bound 4",
        reports.len()
    );
    let groups: Vec<_> = reports
        .iter()
        .filter(|r| r.status == SubsetStatus::Subgroup)
        .collect();
    ensure!(groups.len() == 1, "{} subgroups at bound 4", groups.len());
    ensure!(
        groups[0].members == vec![FinSet::empty()],
        "subgroup {:?}",
        groups[0].members
    );

    // Re-verify every reported subgroup directly.
    for g in &groups {
        let members: BTreeSet<&FinSet> = g.members.iter().collect();
        for a in &g.members {
            ensure!(members.contains(&invert(a)), "inverse closure");
            for b in &g.members {
                ensure!(members.contains(&oplus(a, b)), "⊕ closure");
                for c in &g.members {
                    ensure!(assoc_witness(a, b, c).is_none(), "associativity");
                }
            }
        }
    }

    for bound in 0..=5 {
        let max_size = 2.min(1 << bound);
        let rs = search_closed_subsets(bound, max_size).map_err(|e| e.to_string())?;
        let pairs = rs
            .iter()
            .filter(|r| r.members.len() == 2 && r.status == SubsetStatus::Subgroup)
            .count();
        ensure!(pairs == 0, "{pairs} size-2 subgroups at bound {bound}");
    }

    let reference = report_lines(&reports);
    let again = report_lines(&search_closed_subsets(4, 16).map_err(|e| e.to_string())?);
    ensure!(again == reference, "search output differs between runs");
    for workers in [1, 2, 3, 8] {
        let rs = search_closed_subsets_with_workers(4, 16, workers).map_err(|e| e.to_string())?;
        ensure!(
            report_lines(&rs) == reference,
            "search output differs with {workers} workers"
        );
        let s = carryset::explorer::scan_associativity_with_workers(4, workers)
            .map_err(|e| e.to_string())?;
        ensure!(
            s == scan_associativity(4).unwrap(),
            "scan differs with {workers} workers"
        );
    }
    Ok(())
}

fn stats_oracle() -> Check {
    let w1 = approx_stats(1).map_err(|e| e.to_string())?;
    ensure!(
        (w1.total_pairs, w1.exact_pairs) == (4, 4),
        "width 1: {w1:?}"
    );
    let w2 = approx_stats(2).map_err(|e| e.to_string())?;
    ensure!(
        (w2.total_pairs, w2.exact_pairs) == (16, 14),
        "width 2: {w2:?}"
    );
    let failing: Vec<(u64, u64)> = (0..4u64)
        .flat_map(|a| (0..4u64).map(move |b| (a, b)))
        .filter(|&(a, b)| approx_add(&a, &b) != a + b)
        .collect();
    ensure!(failing == vec![(1, 3), (3, 1)], "failing pairs {failing:?}");
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "1 paper-example regression",
            Duration::from_secs(1),
            paper_examples,
        ),
        (
            "2 inverse over all A ⊆ [0,12)",
            Duration::from_secs(1),
            inverse_exhaustive,
        ),
        (
            "3 uniqueness of A ⊕ X = B over [0,8)",
            Duration::from_secs(10),
            uniqueness_scan,
        ),
        (
            "4 carry identity over [0,2^10)²",
            Duration::from_secs(1),
            knuth_identity,
        ),
        (
            "5 one-round correspondence over [0,8)",
            Duration::from_secs(1),
            one_round_correspondence,
        ),
        (
            "6 carry-iteration convergence",
            Duration::from_secs(2),
            carry_iteration,
        ),
        (
            "7 algebraic laws over [0,9)",
            Duration::from_secs(2),
            algebraic_laws,
        ),
        (
            "8 explorer theorems",
            Duration::from_secs(30),
            explorer_theorems,
        ),
        (
            "9 adder statistics oracle",
            Duration::from_secs(1),
            stats_oracle,
        ),
    ];
    let mut failed = 0;
    for (name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(()) if elapsed < budget => "PASS".to_string(),
            Ok(()) => format!("FAIL (over budget {budget:?})"),
            Err(msg) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("[{verdict}] criterion {name} in {elapsed:.2?}");
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
