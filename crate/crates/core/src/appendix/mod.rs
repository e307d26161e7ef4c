//! Loader and checker for the RSA-640 digit record.
//!
//! The record is a plain `key=value` file. Values may wrap: a trailing `\`
//! joins the next line, and whitespace inside a value is dropped. Lines
//! starting with `#` are comments. Integer fields that carry a single stray
//! `.` (a typesetting artifact) are accepted with the dot removed, and the
//! repair is recorded in [`AppendixRecord::normalizations`].

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::numeric::{digit_agreement, fixed_div, isqrt, BigNat, FixedDec};
use crate::primes::primality;

/// Leading digits of the partial modulus that are marked as shared with
/// RSA-640 in the source record.
pub const UNDERLINED_PREFIX_DIGITS: usize = 96;
/// Precision used when comparing the computed quotients to the printed ones.
pub const PRINTED_F_PRECISION: u32 = 100;
/// Minimum agreement between the two computed quotients.
pub const MIN_F_AGREEMENT: usize = 90;
/// Leading digits every printed and computed quotient must begin with.
pub const F_PREFIX: &str = "1.07833289578512";

const BUNDLED: &str = include_str!("../../data/rsa640_appendix.txt");

const KEYS: [&str; 9] = [
    "rsa_n",
    "rsa_p",
    "rsa_q",
    "f_a",
    "f_b",
    "partial_n",
    "partial_p",
    "partial_q",
    "partial_kappa",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AppendixError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing key {0}")]
    MissingKey(&'static str),
    #[error("record is empty")]
    Empty,
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AppendixRecord {
    pub rsa_n: BigNat,
    pub rsa_p: BigNat,
    pub rsa_q: BigNat,
    pub f_a: FixedDec,
    pub f_b: FixedDec,
    pub partial_n: BigNat,
    pub partial_p: BigNat,
    pub partial_q: BigNat,
    pub partial_kappa: BigNat,
    /// Human-readable notes for every repaired field.
    pub normalizations: Vec<String>,
}

impl AppendixRecord {
    /// The record shipped with the crate.
    pub fn bundled() -> AppendixRecord {
        parse_appendix(BUNDLED).expect("bundled record parses")
    }
}

pub fn load_appendix(path: &Path) -> Result<AppendixRecord, AppendixError> {
    let text = std::fs::read_to_string(path).map_err(|e| AppendixError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_appendix(&text)
}

/// The joined value and the line its key appeared on.
struct RawValue {
    line: usize,
    value: String,
}

pub fn parse_appendix(text: &str) -> Result<AppendixRecord, AppendixError> {
    let mut raw: BTreeMap<&'static str, RawValue> = BTreeMap::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    while let Some((line, content)) = lines.next() {
        let trimmed = content.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut joined = String::new();
        let mut current = trimmed.to_string();
        while let Some(head) = current.strip_suffix('\\') {
            joined.push_str(head);
            match lines.next() {
                Some((_, next)) => current = next.trim().to_string(),
                None => {
                    return Err(AppendixError::Parse {
                        line,
                        message: "continuation at end of input".into(),
                    })
                }
            }
        }
        joined.push_str(&current);
        let (key, value) = joined.split_once('=').ok_or_else(|| AppendixError::Parse {
            line,
            message: format!("expected key=value, got {trimmed:?}"),
        })?;
        let key = key.trim();
        let known = KEYS.iter().find(|k| **k == key).ok_or_else(|| AppendixError::Parse {
            line,
            message: format!("unknown key {key:?}"),
        })?;
        let value: String = value.chars().filter(|c| !c.is_whitespace()).collect();
        if raw.insert(known, RawValue { line, value }).is_some() {
            return Err(AppendixError::Parse {
                line,
                message: format!("duplicate key {key:?}"),
            });
        }
    }
    if raw.is_empty() {
        return Err(AppendixError::Empty);
    }
    if let Some(missing) = KEYS.iter().find(|k| !raw.contains_key(*k)) {
        return Err(AppendixError::MissingKey(missing));
    }

    let mut normalizations = Vec::new();
    let mut int = |key: &'static str| -> Result<BigNat, AppendixError> {
        let RawValue { line, value } = &raw[key];
        let bad = |message: String| AppendixError::Parse { line: *line, message };
        let digits = match value.matches('.').count() {
            0 => value.clone(),
            1 => {
                let at = value.find('.').unwrap();
                normalizations.push(format!("{key}: removed stray '.' after digit {at}"));
                value.replace('.', "")
            }
            _ => return Err(bad(format!("{key} has more than one '.'"))),
        };
        digits
            .parse()
            .map_err(|_| bad(format!("{key} is not a decimal integer")))
    };
    let rsa_n = int("rsa_n")?;
    let rsa_p = int("rsa_p")?;
    let rsa_q = int("rsa_q")?;
    let partial_n = int("partial_n")?;
    let partial_p = int("partial_p")?;
    let partial_q = int("partial_q")?;
    let partial_kappa = int("partial_kappa")?;
    let dec = |key: &'static str| -> Result<FixedDec, AppendixError> {
        let RawValue { line, value } = &raw[key];
        value.parse().map_err(|_| AppendixError::Parse {
            line: *line,
            message: format!("{key} is not a decimal"),
        })
    };
    Ok(AppendixRecord {
        rsa_n,
        rsa_p,
        rsa_q,
        f_a: dec("f_a")?,
        f_b: dec("f_b")?,
        partial_n,
        partial_p,
        partial_q,
        partial_kappa,
        normalizations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// Must pass for the record to verify.
    Required,
    /// Tests a reading of the record; a failure is reported, not fatal.
    Hypothesis,
    /// Reported facts only.
    Informational,
}

impl CheckKind {
    pub fn label(self) -> &'static str {
        match self {
            CheckKind::Required => "required",
            CheckKind::Hypothesis => "hypothesis",
            CheckKind::Informational => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_required_passed(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.kind == CheckKind::Required)
            .all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match (c.kind, c.passed) {
                (CheckKind::Informational, _) => "INFO",
                (_, true) => "PASS",
                (_, false) => "FAIL",
            };
            writeln!(f, "{status} {} [{}] {}", c.name, c.kind.label(), c.detail)?;
        }
        Ok(())
    }
}

/// Shared leading digit characters of two decimal renderings.
fn shared_digits(a: &str, b: &str) -> usize {
    a.bytes()
        .zip(b.bytes())
        .take_while(|(x, y)| x == y)
        .filter(|(x, _)| x.is_ascii_digit())
        .count()
}

fn tail(n: &BigNat) -> String {
    let s = n.to_string();
    format!("...{}", &s[s.len().saturating_sub(6)..])
}

/// Runs every check on `rec`; `precision` sets the scale of the computed
/// quotient pair used for the agreement check.
pub fn verify_rsa640(rec: &AppendixRecord, precision: u32) -> VerificationReport {
    let mut checks = Vec::with_capacity(7);
    let note = |key: &str| {
        rec.normalizations
            .iter()
            .find(|n| n.starts_with(key))
            .map(|n| format!(" ({n})"))
            .unwrap_or_default()
    };

    let product_ok = &rec.rsa_p * &rec.rsa_q == rec.rsa_n;
    checks.push(Check {
        name: "product-exact",
        kind: CheckKind::Required,
        passed: product_ok,
        detail: format!(
            "rsa_p * rsa_q {} rsa_n{}{}",
            if product_ok { "==" } else { "!=" },
            note("rsa_p"),
            note("rsa_q"),
        ),
    });

    let kappa = isqrt(&rec.rsa_n).kappa;
    let quotients = |d: u32| {
        let f1 = fixed_div(&kappa, &rec.rsa_p, d).expect("rsa_p is nonzero");
        let f2 = fixed_div(&rec.rsa_q, &kappa, d).expect("kappa is nonzero");
        (f1, f2)
    };

    let (f1, f2) = if rec.rsa_p.is_zero() || kappa.is_zero() {
        (FixedDec::from_integer(BigNat::zero()), FixedDec::from_integer(BigNat::zero()))
    } else {
        quotients(PRINTED_F_PRECISION)
    };
    let (fa, fb) = (rec.f_a.to_string(), rec.f_b.to_string());
    let printed_shared = shared_digits(&fa, &fb);
    let best = |f: &FixedDec| {
        let s = f.to_string();
        let (a, b) = (shared_digits(&s, &fa), shared_digits(&s, &fb));
        if a >= b {
            ("f_a", a, s)
        } else {
            ("f_b", b, s)
        }
    };
    let (m1, a1, s1) = best(&f1);
    let (m2, a2, s2) = best(&f2);
    let prefixed = [&s1, &s2, &fa, &fb].iter().all(|s| s.starts_with(F_PREFIX));
    checks.push(Check {
        name: "f-prefix",
        kind: CheckKind::Required,
        passed: prefixed && a1 >= printed_shared && a2 >= printed_shared,
        detail: format!(
            "kappa/p matches {m1} for {a1} digits, q/kappa matches {m2} for {a2}; \
             printed values share {printed_shared}"
        ),
    });

    let gap = if rec.rsa_p.is_zero() || kappa.is_zero() {
        0
    } else {
        let (g1, g2) = quotients(precision);
        digit_agreement(&g1, &g2).expect("same scale")
    };
    checks.push(Check {
        name: "f-gap",
        kind: CheckKind::Required,
        passed: gap >= MIN_F_AGREEMENT,
        detail: format!("kappa/p and q/kappa agree on {gap} digits at precision {precision} (need {MIN_F_AGREEMENT})"),
    });

    let partial_ok = &rec.partial_p * &rec.partial_q == rec.partial_n;
    checks.push(Check {
        name: "partial-product",
        kind: CheckKind::Required,
        passed: partial_ok,
        detail: format!(
            "partial_p * partial_q {} partial_n{}{}",
            if partial_ok { "==" } else { "!=" },
            note("partial_p"),
            note("partial_q"),
        ),
    });

    let prefix = shared_digits(&rec.partial_n.to_string(), &rec.rsa_n.to_string());
    checks.push(Check {
        name: "prefix-match",
        kind: CheckKind::Required,
        passed: prefix >= UNDERLINED_PREFIX_DIGITS,
        detail: format!("partial_n shares {prefix} leading digits with rsa_n (marked: {UNDERLINED_PREFIX_DIGITS})"),
    });

    let root = isqrt(&rec.partial_n).kappa;
    let kappa_ok = root == rec.partial_kappa;
    let offset = if rec.partial_kappa >= root {
        format!("+{}", &rec.partial_kappa - &root)
    } else {
        format!("-{}", &root - &rec.partial_kappa)
    };
    checks.push(Check {
        name: "partial-kappa",
        kind: CheckKind::Hypothesis,
        passed: kappa_ok,
        detail: format!(
            "isqrt(partial_n) = {}, printed {} (printed = isqrt {offset})",
            tail(&root),
            tail(&rec.partial_kappa)
        ),
    });

    let labels = [
        ("rsa_p", &rec.rsa_p),
        ("rsa_q", &rec.rsa_q),
        ("partial_p", &rec.partial_p),
        ("partial_q", &rec.partial_q),
    ]
    .map(|(k, v)| format!("{k}: {}", primality(v).label()));
    checks.push(Check {
        name: "primality",
        kind: CheckKind::Informational,
        passed: true,
        detail: labels.join(", "),
    });

    VerificationReport { checks }
}
