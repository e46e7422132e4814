//! Arithmetic decision procedures for "does X lie on a Calabi-Yau".
//!
//! Every verdict carries the clause it rests on, as a stable identifier plus
//! a one-line paraphrase, and a reason string showing the derived numbers.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    LiesOnCalabiYau,
    NotOnCalabiYau,
    ObviousK3Family,
    ExceptionCase,
    NoExtensions,
    NonRationalOnly,
    OutOfHypotheses,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::LiesOnCalabiYau => "LIES_ON_CALABI_YAU",
            Status::NotOnCalabiYau => "NOT_ON_CALABI_YAU",
            Status::ObviousK3Family => "OBVIOUS_K3_FAMILY",
            Status::ExceptionCase => "EXCEPTION_CASE",
            Status::NoExtensions => "NO_EXTENSIONS",
            Status::NonRationalOnly => "NON_RATIONAL_ONLY",
            Status::OutOfHypotheses => "OUT_OF_HYPOTHESES",
        }
    }

    /// `Some(true)` / `Some(false)` when the verdict decides the question,
    /// `None` when the tables are silent.
    pub fn lies_on_calabi_yau(self) -> Option<bool> {
        match self {
            Status::LiesOnCalabiYau | Status::ObviousK3Family => Some(true),
            Status::NotOnCalabiYau | Status::NoExtensions | Status::NonRationalOnly => Some(false),
            Status::ExceptionCase | Status::OutOfHypotheses => None,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Citation {
    pub clause: &'static str,
    pub statement: &'static str,
}

macro_rules! clause {
    ($name:ident, $id:literal, $text:literal) => {
        pub const $name: Citation = Citation { clause: $id, statement: $text };
    };
}

/// The clauses the classifiers cite.
pub mod clauses {
    use super::Citation;
    clause!(HYPERSURFACE_RANGE, "hypersurface-range",
        "a smooth degree d hypersurface in P^n is a hyperplane section of a Calabi-Yau exactly when n+1 <= d <= 2n+2");
    clause!(NOT_CANONICAL, "not-canonically-polarized",
        "kappa <= 0, so K_X is not very ample and the extension tables do not apply");
    clause!(CI_NO_EXTENSIONS, "ci-kappa-exceeds-d",
        "if kappa > d the canonical embedding has no extensions beyond cones");
    clause!(CI_NON_RATIONAL, "ci-nonrational-extensions",
        "if d > kappa > d/2 and kappa > d_(n-r-1), nontrivial extensions exist but all have non-rational singularities");
    clause!(CI_CYCLIC_COVER, "ci-cyclic-cover",
        "if kappa divides some d_a and Y_a has rational singularities, a cyclic cover of Y_a is a Calabi-Yau containing X as a hyperplane section");
    clause!(CI_CODIM2_SMALL, "ci-codim2-small-degree",
        "a (d',d) complete intersection with d <= n+1 lies on a smooth Calabi-Yau hypersurface");
    clause!(CI_CODIM2_LARGE, "ci-codim2-large-degree",
        "a (d',d) complete intersection with d > n+2 and d/2 + d' > n+1 lies on no Calabi-Yau unless d' = n+1");
    clause!(CURVE_EXCEPTION, "curve-gaussian-exception",
        "the complete intersection surface through C may fail to compute the Gaussian of C");
    clause!(CURVE_OBVIOUS, "curve-obvious-k3",
        "C is a hyperplane section of a complete intersection K3 surface, which is its universal extension");
    clause!(CURVE_NOT, "curve-not-on-k3",
        "outside the exceptions and obvious families a complete intersection curve lies on no K3 surface");
    clause!(RULED, "ruled-surface-gaussian",
        "F_n computes the Gaussian of C, every extension comes from blowing up F_n and contracting an anticanonical divisor, so C is on no K3");
    clause!(BIELLIPTIC, "bielliptic-unique-extension",
        "a bielliptic canonical curve of genus >= 11 has a unique nontrivial extension, a ruled surface with two simple elliptic singularities");
    clause!(PLANE_SMALL, "plane-curve-double-cover",
        "smooth plane curves of degree 4, 5 or 6 lie on a K3 surface with at most rational double points, via double covers");
    clause!(PLANE_LARGE, "plane-curve-corank-ten",
        "a smooth plane curve of degree >= 7 lies on no K3 surface; its Gaussian has corank 10");
    clause!(HYPOTHESES, "outside-hypotheses",
        "the input lies outside the ranges where the tables give a verdict");
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub citation: Citation,
    pub reason: String,
}

impl Verdict {
    fn new(status: Status, citation: Citation, reason: String) -> Verdict {
        Verdict { status, citation, reason }
    }

    pub fn lies_on_calabi_yau(&self) -> Option<bool> {
        self.status.lies_on_calabi_yau()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}", self.status, self.citation.clause, self.reason)
    }
}

use clauses::*;

pub fn classify_hypersurface(n: u32, d: u32) -> Verdict {
    let (n, d) = (n as i64, d as i64);
    let kappa = d - (n + 1);
    if n < 2 || d <= n {
        let mut reason = format!("n={}, d={}, kappa={}", n, d, kappa);
        if n >= 2 {
            reason.push_str("; X lies on the smooth Calabi-Yau hypersurfaces of degree n+1 containing it, but is not canonically polarized");
        }
        return Verdict::new(Status::OutOfHypotheses, NOT_CANONICAL, reason);
    }
    if d <= 2 * n + 2 {
        let mut reason = format!("n={}, d={}, kappa={}, range {}..{}", n, d, kappa, n + 1, 2 * n + 2);
        if d == n + 1 {
            reason.push_str("; d = n+1 is at the lower boundary: X is itself Calabi-Yau (kappa = 0)");
        }
        return Verdict::new(Status::LiesOnCalabiYau, HYPERSURFACE_RANGE, reason);
    }
    Verdict::new(
        Status::NotOnCalabiYau,
        HYPERSURFACE_RANGE,
        format!(
            "n={}, d={} > 2n+2={}, kappa={}; extensions exist but all have non-rational singularities",
            n,
            d,
            2 * n + 2,
            kappa
        ),
    )
}

fn kappa_of(n: u32, degrees: &[u32]) -> i64 {
    degrees.iter().map(|&d| d as i64).sum::<i64>() - (n as i64 + 1)
}

fn check_multidegree(n: u32, degrees: &[u32], r: u32) -> Result<()> {
    if r == 0 || r >= n {
        return Err(Error::Precondition(format!("dimension r={} must satisfy 1 <= r < n={}", r, n)));
    }
    if degrees.len() != (n - r) as usize {
        return Err(Error::Precondition(format!(
            "expected n-r={} degrees, got {}",
            n - r,
            degrees.len()
        )));
    }
    if degrees.iter().any(|&d| d < 2) {
        return Err(Error::Precondition("degrees must be at least 2".into()));
    }
    if degrees.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition("degrees must be non-decreasing".into()));
    }
    Ok(())
}

/// Smooth complete intersection of multidegree `degrees` and dimension `r` in `P^n`.
pub fn classify_complete_intersection(n: u32, degrees: &[u32], r: u32) -> Result<Verdict> {
    check_multidegree(n, degrees, r)?;
    let kappa = kappa_of(n, degrees);
    let shown = format!("n={}, degrees={:?}, r={}, kappa={}", n, degrees, r, kappa);
    if kappa <= 0 {
        return Ok(Verdict::new(Status::OutOfHypotheses, NOT_CANONICAL, shown));
    }
    if r == 1 {
        return Ok(classify_ci_curve(n, degrees, shown));
    }
    let d = *degrees.last().unwrap() as i64;
    let before = if degrees.len() >= 2 { Some(degrees[degrees.len() - 2] as i64) } else { None };
    if kappa > d {
        return Ok(Verdict::new(Status::NoExtensions, CI_NO_EXTENSIONS, format!("{}; kappa > d={}", shown, d)));
    }
    let middle = kappa < d && 2 * kappa > d;
    if middle && before.map_or(true, |b| kappa > b) {
        return Ok(Verdict::new(
            Status::NonRationalOnly,
            CI_NON_RATIONAL,
            format!("{}; d={} > kappa > d/2 and kappa > {}", shown, d, before.map_or("none".into(), |b| b.to_string())),
        ));
    }
    if let Some(&da) = degrees.iter().find(|&&da| da as i64 % kappa == 0) {
        return Ok(Verdict::new(
            Status::LiesOnCalabiYau,
            CI_CYCLIC_COVER,
            format!(
                "{}; kappa divides d_a={} with m={}; assumes Y_a can be chosen with rational singularities (not verified)",
                shown,
                da,
                da as i64 / kappa
            ),
        ));
    }
    if degrees.len() == 1 {
        let mut v = classify_hypersurface(n, degrees[0]);
        v.reason = format!("{}; {}", shown, v.reason);
        return Ok(v);
    }
    if degrees.len() == 2 {
        let (dp, n1) = (degrees[0] as i64, n as i64 + 1);
        if d <= n1 {
            return Ok(Verdict::new(Status::LiesOnCalabiYau, CI_CODIM2_SMALL, format!("{}; d={} <= n+1", shown, d)));
        }
        if d > n1 + 1 && middle && dp != n1 {
            return Ok(Verdict::new(
                Status::NotOnCalabiYau,
                CI_CODIM2_LARGE,
                format!("{}; d={} > n+2 and d/2 + d'={} > n+1", shown, d, dp),
            ));
        }
    }
    let failed = if middle {
        format!("kappa > d_(n-r-1)={} fails", before.unwrap())
    } else {
        "kappa <= d/2 and kappa divides no d_a".to_string()
    };
    Ok(Verdict::new(Status::OutOfHypotheses, HYPOTHESES, format!("{}; {}", shown, failed)))
}

fn classify_ci_curve(n: u32, degrees: &[u32], shown: String) -> Verdict {
    let exception = match n {
        2 => degrees[0] <= 6,
        3 => degrees[1] <= 4,
        4 => matches!(degrees, [2, 2, 2] | [2, 2, 3] | [2, 3, 3]),
        5 => degrees.iter().all(|&d| d == 2),
        _ => false,
    };
    if exception {
        return Verdict::new(Status::ExceptionCase, CURVE_EXCEPTION, shown);
    }
    let obvious = match (n, degrees) {
        (3, [4, d2]) => *d2 > 4,
        (4, [2, 3, d3]) => *d3 > 3,
        (5, [2, 2, 2, d4]) => *d4 > 2,
        _ => false,
    };
    if obvious {
        return Verdict::new(
            Status::ObviousK3Family,
            CURVE_OBVIOUS,
            format!("{}; kappa = d > d_(n-2)", shown),
        );
    }
    Verdict::new(Status::NotOnCalabiYau, CURVE_NOT, shown)
}

/// Smooth curve in `|pB + qF|` on the Hirzebruch surface `F_n`.
pub fn classify_ruled_curve(n: u32, p: u32, q: u32) -> Verdict {
    let shown = format!("n={}, p={}, q={}", n, p, q);
    let (ok, bound) = match n {
        0 => (q >= 5, "q >= 5".to_string()),
        1 => (q >= p + 4, format!("q >= p+4 = {}", p + 4)),
        2 => (q >= 2 * p + 2, format!("q >= 2p+2 = {}", 2 * p + 2)),
        _ => (q >= p * n, format!("q >= pn = {} (added so that the class has smooth irreducible members)", p * n)),
    };
    if p < 5 || !ok {
        let why = if p < 5 { "p >= 5".to_string() } else { bound };
        return Verdict::new(Status::OutOfHypotheses, HYPOTHESES, format!("{}; needs {}", shown, why));
    }
    let h0 = if n >= 3 { n + 6 } else { 9 };
    Verdict::new(Status::NotOnCalabiYau, RULED, format!("{}; {}; h0(-K)={}", shown, bound, h0))
}

pub fn classify_bielliptic(g: u32) -> Verdict {
    if g >= 11 {
        Verdict::new(
            Status::NotOnCalabiYau,
            BIELLIPTIC,
            format!("g={}; unique nontrivial extension, birationally ruled with two simple elliptic singularities of degree {}", g, g - 1),
        )
    } else {
        Verdict::new(Status::OutOfHypotheses, HYPOTHESES, format!("g={}; needs g >= 11", g))
    }
}

pub fn classify_plane_curve(d: u32) -> Verdict {
    match d {
        0..=3 => Verdict::new(
            Status::OutOfHypotheses,
            HYPOTHESES,
            format!("d={}; genus <= 1, no canonical embedding", d),
        ),
        4..=6 => Verdict::new(
            Status::LiesOnCalabiYau,
            PLANE_SMALL,
            format!("d={}; double cover of P^2 branched along C plus a curve of degree {}", d, 6 - d),
        ),
        _ => Verdict::new(
            Status::NotOnCalabiYau,
            PLANE_LARGE,
            format!("d={}; genus {}, corank of the Gaussian is 10", d, (d - 1) * (d - 2) / 2),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersurfaces() {
        assert_eq!(classify_hypersurface(3, 5).status, Status::LiesOnCalabiYau);
        assert_eq!(classify_hypersurface(2, 7).status, Status::NotOnCalabiYau);
        assert_eq!(classify_hypersurface(3, 9).status, Status::NotOnCalabiYau);
        assert_eq!(classify_hypersurface(3, 8).status, Status::LiesOnCalabiYau);
        assert_eq!(classify_hypersurface(3, 3).status, Status::OutOfHypotheses);
        assert!(classify_hypersurface(3, 4).reason.contains("lower boundary"));
    }

    #[test]
    fn complete_intersections() {
        let v = classify_complete_intersection(3, &[4, 6], 1).unwrap();
        assert_eq!(v.status, Status::ObviousK3Family);
        let v = classify_complete_intersection(5, &[2, 2, 2, 2], 1).unwrap();
        assert_eq!(v.status, Status::ExceptionCase);
        assert!(classify_complete_intersection(4, &[2, 3, 9], 2).is_err());
        assert_eq!(classify_complete_intersection(4, &[2, 3, 9], 1).unwrap().status, Status::ObviousK3Family);
        let v = classify_complete_intersection(5, &[2, 4, 9], 2).unwrap();
        assert_eq!(v.status, Status::LiesOnCalabiYau);
        assert_eq!(v.citation, CI_CYCLIC_COVER);
        assert!(v.reason.contains("m=1") && v.reason.contains("not verified"));
        assert!(classify_complete_intersection(4, &[3, 2], 2).is_err());
        assert!(classify_complete_intersection(4, &[2, 2, 2], 2).is_err());
    }

    #[test]
    fn ruled_bielliptic_plane() {
        let v = classify_ruled_curve(0, 5, 5);
        assert_eq!(v.status, Status::NotOnCalabiYau);
        assert!(v.reason.contains("h0(-K)=9"));
        assert_eq!(classify_ruled_curve(1, 5, 8).status, Status::OutOfHypotheses);
        let v = classify_ruled_curve(4, 5, 21);
        assert_eq!(v.status, Status::NotOnCalabiYau);
        assert!(v.reason.contains("h0(-K)=10"));
        assert_eq!(classify_bielliptic(11).status, Status::NotOnCalabiYau);
        assert_eq!(classify_bielliptic(10).status, Status::OutOfHypotheses);
        assert_eq!(classify_bielliptic(15).status, Status::NotOnCalabiYau);
        assert_eq!(classify_plane_curve(6).status, Status::LiesOnCalabiYau);
        assert_eq!(classify_plane_curve(7).status, Status::NotOnCalabiYau);
        assert_eq!(classify_plane_curve(3).status, Status::OutOfHypotheses);
    }

    #[test]
    fn hypersurface_agrees_with_ci() {
        for n in 3..=8 {
            for d in 2..=20 {
                let a = classify_hypersurface(n, d).lies_on_calabi_yau();
                let b = classify_complete_intersection(n, &[d], n - 1).unwrap().lies_on_calabi_yau();
                if let (Some(a), Some(b)) = (a, b) {
                    assert_eq!(a, b, "n={} d={}", n, d);
                }
            }
        }
    }
}
