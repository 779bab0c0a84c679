//! Development harness: evaluates selected terms at theta = 0.52 under a
//! sweep of lift-policy variants and prints them next to reference values,
//! so the block-grouping convention can be chosen empirically.
//!
//! Usage: `anchors [samples_per_term] [term ...]`

use sieve_bounds::bounds::{evaluate_term, EvalConfig};
use sieve_bounds::integrals::term_by_name;
use sieve_bounds::regions::{Ctx, NuLift, Policy, ResidualUse};

const ANCHORS: &[(&str, f64)] = &[
    ("U_A1", 0.239221),
    ("V_A1", 0.179773),
    ("V_A2", 0.004874),
    ("V_A3", 0.043475),
    ("V_A4", 0.310609),
    ("V_A5", 0.008299),
    ("V_A6", 0.051108),
    ("V_A7", 0.102865),
    ("V_A8", 0.201264),
    ("V_C1", 0.261034),
    ("V_C3", 0.128160),
    ("V_C4", 0.307367),
    ("U_C01", 0.197907),
    ("U_C08", 0.201090),
    ("U_C04", 0.065033),
    ("U_C12", 0.008809),
];

fn policies() -> Vec<(&'static str, Policy)> {
    let base = Policy::default();
    let pub_base = Policy {
        residual_three_block: ResidualUse::FromQuadruples,
        nu_lift: NuLift::FirstTwo,
        direct_rows: false,
        tri_combo_max_arity: 5,
        closed_rows_max_arity: 7,
        extended_plus: true,
        ..base
    };
    vec![
        ("default", base),
        ("pub", pub_base),
        (
            "pub-noext",
            Policy {
                extended_plus: false,
                ..pub_base
            },
        ),
        (
            "pub-full",
            Policy {
                nu_lift: NuLift::Full,
                ..pub_base
            },
        ),
        (
            "pub-r3t",
            Policy {
                residual_three_block: ResidualUse::FromTriples,
                ..pub_base
            },
        ),
    ]
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    // grid mode: `anchors grid <points-per-dim> [term ...]`
    if args.first().map(String::as_str) == Some("grid") {
        let pts: usize = args[1].parse().expect("points per dim");
        let names: Vec<&str> = if args.len() > 2 {
            args[2..].iter().map(String::as_str).collect()
        } else {
            vec!["V_A1", "V_A4", "V_A7", "V_A8", "V_C1"]
        };
        for (label, policy) in policies() {
            let ctx = Ctx::new(0.52, policy);
            print!("{label:<16}");
            for n in &names {
                let term = term_by_name(ctx, n).unwrap_or_else(|| panic!("unknown term {n}"));
                print!("{:>12.6}", term.eval_grid(pts));
            }
            println!();
        }
        return;
    }
    // adaptive mode: `anchors adaptive <tol> [term ...]`
    if args.first().map(String::as_str) == Some("adaptive") {
        let tol: f64 = args[1].parse().expect("tolerance");
        let names: Vec<&str> = if args.len() > 2 {
            args[2..].iter().map(String::as_str).collect()
        } else {
            vec!["H", "U_A1", "V_A1", "V_A4", "V_A7", "V_A8", "V_C1"]
        };
        for (label, policy) in policies() {
            let ctx = Ctx::new(0.52, policy);
            print!("{label:<16}");
            for n in &names {
                let term = term_by_name(ctx, n).unwrap_or_else(|| panic!("unknown term {n}"));
                let e = term.eval_adaptive(tol);
                print!(
                    "{:>12.6} (±{:.1e}, {}{:.1}s)",
                    e.value,
                    e.error,
                    if e.converged { "" } else { "!" },
                    e.wall_time
                );
            }
            println!();
        }
        return;
    }
    let samples: u64 = args
        .first()
        .and_then(|s| s.parse().ok())
        .unwrap_or(2_000_000);
    let names: Vec<&str> = if args.len() > 1 {
        args[1..].iter().map(String::as_str).collect()
    } else {
        ANCHORS.iter().map(|(n, _)| *n).collect()
    };

    let cfg = EvalConfig {
        samples_mid: samples,
        samples_high: samples,
        ..EvalConfig::default()
    };

    print!("{:<16}", "policy");
    for n in &names {
        print!("{n:>12}");
    }
    println!();
    print!("{:<16}", "reference");
    for n in &names {
        let r = ANCHORS.iter().find(|(a, _)| a == n).map(|(_, v)| *v);
        match r {
            Some(v) => print!("{v:>12.6}"),
            None => print!("{:>12}", "-"),
        }
    }
    println!();

    for (label, policy) in policies() {
        let ctx = Ctx::new(0.52, policy);
        print!("{label:<16}");
        for n in &names {
            let term = term_by_name(ctx, n).unwrap_or_else(|| panic!("unknown term {n}"));
            let e = evaluate_term(&term, &cfg);
            print!("{:>12.6}", e.mean);
        }
        println!();
    }
}
