#![allow(dead_code)]

use hyperext::classify::*;

/// Every classifier input in the golden table, one row per input:
/// `kind<TAB>args<TAB>STATUS<TAB>clause`.
pub fn golden_rows() -> Vec<String> {
    let mut rows = Vec::new();
    let mut push = |kind: &str, args: String, v: Verdict| {
        rows.push(format!("{}\t{}\t{}\t{}", kind, args, v.status, v.citation.clause));
    };
    for n in 2..=6 {
        for d in 1..=12 {
            push("hypersurface", format!("{} {}", n, d), classify_hypersurface(n, d));
        }
    }
    for n in 2..=6u32 {
        for r in 1..n {
            for degrees in multidegrees((n - r) as usize, 2, 12) {
                let v = classify_complete_intersection(n, &degrees, r).unwrap();
                push("ci", format!("{} {} {:?}", n, r, degrees), v);
            }
        }
    }
    for n in 0..=6 {
        for p in 1..=12 {
            for q in 1..=30 {
                push("ruled", format!("{} {} {}", n, p, q), classify_ruled_curve(n, p, q));
            }
        }
    }
    for g in 2..=20 {
        push("bielliptic", g.to_string(), classify_bielliptic(g));
    }
    for d in 1..=12 {
        push("plane", d.to_string(), classify_plane_curve(d));
    }
    rows
}

fn multidegrees(len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in multidegrees(len - 1, first, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Hand-encoded expectation for a golden row, written straight from the
/// published tables rather than from the classifier's code path.
pub fn expected(kind: &str, args: &str) -> (&'static str, &'static str) {
    let nums: Vec<i64> = args
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect();
    match kind {
        "hypersurface" => {
            let (n, d) = (nums[0], nums[1]);
            if d <= n {
                ("OUT_OF_HYPOTHESES", "not-canonically-polarized")
            } else if d <= 2 * n + 2 {
                ("LIES_ON_CALABI_YAU", "hypersurface-range")
            } else {
                ("NOT_ON_CALABI_YAU", "hypersurface-range")
            }
        }
        "ci" => expected_ci(nums[0], nums[1], &nums[2..]),
        "ruled" => {
            let (n, p, q) = (nums[0], nums[1], nums[2]);
            let ok = p >= 5
                && match n {
                    0 => q >= 5,
                    1 => q >= p + 4,
                    2 => q >= 2 * p + 2,
                    _ => q >= p * n,
                };
            if ok {
                ("NOT_ON_CALABI_YAU", "ruled-surface-gaussian")
            } else {
                ("OUT_OF_HYPOTHESES", "outside-hypotheses")
            }
        }
        "bielliptic" => {
            if nums[0] >= 11 {
                ("NOT_ON_CALABI_YAU", "bielliptic-unique-extension")
            } else {
                ("OUT_OF_HYPOTHESES", "outside-hypotheses")
            }
        }
        "plane" => match nums[0] {
            0..=3 => ("OUT_OF_HYPOTHESES", "outside-hypotheses"),
            4..=6 => ("LIES_ON_CALABI_YAU", "plane-curve-double-cover"),
            _ => ("NOT_ON_CALABI_YAU", "plane-curve-corank-ten"),
        },
        _ => panic!("unknown kind {}", kind),
    }
}

fn expected_ci(n: i64, r: i64, ds: &[i64]) -> (&'static str, &'static str) {
    let kappa: i64 = ds.iter().sum::<i64>() - n - 1;
    if kappa <= 0 {
        return ("OUT_OF_HYPOTHESES", "not-canonically-polarized");
    }
    if r == 1 {
        let exceptions = (n == 2 && ds[0] <= 6)
            || (n == 3 && ds[1] <= 4)
            || (n == 4 && [[2, 2, 2], [2, 2, 3], [2, 3, 3]].iter().any(|e| e[..] == *ds))
            || (n == 5 && ds == [2, 2, 2, 2]);
        if exceptions {
            return ("EXCEPTION_CASE", "curve-gaussian-exception");
        }
        let obvious = (n == 3 && ds[0] == 4 && ds[1] > 4)
            || (n == 4 && ds[..2] == [2, 3] && ds[2] > 3)
            || (n == 5 && ds[..3] == [2, 2, 2] && ds[3] > 2);
        return if obvious {
            ("OBVIOUS_K3_FAMILY", "curve-obvious-k3")
        } else {
            ("NOT_ON_CALABI_YAU", "curve-not-on-k3")
        };
    }
    let d = *ds.last().unwrap();
    let prev = if ds.len() > 1 { ds[ds.len() - 2] } else { 0 };
    if kappa > d {
        ("NO_EXTENSIONS", "ci-kappa-exceeds-d")
    } else if d > kappa && 2 * kappa > d && kappa > prev {
        ("NON_RATIONAL_ONLY", "ci-nonrational-extensions")
    } else if ds.iter().any(|&a| a % kappa == 0) {
        ("LIES_ON_CALABI_YAU", "ci-cyclic-cover")
    } else if ds.len() == 1 && d <= 2 * n + 2 {
        ("LIES_ON_CALABI_YAU", "hypersurface-range")
    } else if ds.len() == 2 && d <= n + 1 {
        ("LIES_ON_CALABI_YAU", "ci-codim2-small-degree")
    } else if ds.len() == 2 && d > n + 2 && 2 * ds[0] + d > 2 * (n + 1) && ds[0] != n + 1 {
        ("NOT_ON_CALABI_YAU", "ci-codim2-large-degree")
    } else {
        ("OUT_OF_HYPOTHESES", "outside-hypotheses")
    }
}

pub const GOLDEN: &str = include_str!("../golden/classify.tsv");
