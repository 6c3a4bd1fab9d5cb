//! Exact comparison and summation over XSD integer/decimal lexical forms.
//!
//! Comparison works on digit strings, so it never overflows. Summation uses
//! scaled `i128` arithmetic and reports overflow instead of wrapping.

use alloc::string::String;
use core::cmp::Ordering;

/// A numeric lexical form split into sign, integer digits and fraction digits,
/// with redundant zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DecimalParts<'a> {
    pub negative: bool,
    pub int: &'a str,
    pub frac: &'a str,
}

pub(crate) fn split(lexical: &str) -> Option<DecimalParts<'_>> {
    let (negative, body) = match lexical.as_bytes().first()? {
        b'-' => (true, &lexical[1..]),
        b'+' => (false, &lexical[1..]),
        _ => (false, lexical),
    };
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let int = int.trim_start_matches('0');
    let frac = frac.trim_end_matches('0');
    let negative = negative && !(int.is_empty() && frac.is_empty());
    Some(DecimalParts { negative, int, frac })
}

/// Exact numeric ordering of two integer/decimal lexical forms.
pub(crate) fn compare(a: &str, b: &str) -> Option<Ordering> {
    let a = split(a)?;
    let b = split(b)?;
    Some(compare_parts(&a, &b))
}

fn compare_parts(a: &DecimalParts<'_>, b: &DecimalParts<'_>) -> Ordering {
    match (a.negative, b.negative) {
        (false, true) => return Ordering::Greater,
        (true, false) => return Ordering::Less,
        _ => {}
    }
    let magnitude = compare_magnitude(a, b);
    if a.negative {
        magnitude.reverse()
    } else {
        magnitude
    }
}

fn compare_magnitude(a: &DecimalParts<'_>, b: &DecimalParts<'_>) -> Ordering {
    match a.int.len().cmp(&b.int.len()) {
        Ordering::Equal => {}
        other => return other,
    }
    match a.int.cmp(b.int) {
        Ordering::Equal => {}
        other => return other,
    }
    // Integer parts equal: compare fractions positionally.
    let max = a.frac.len().max(b.frac.len());
    for i in 0..max {
        let da = a.frac.as_bytes().get(i).copied().unwrap_or(b'0');
        let db = b.frac.as_bytes().get(i).copied().unwrap_or(b'0');
        match da.cmp(&db) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

/// Running exact sum of decimal lexical forms.
#[derive(Debug, Clone, Default)]
pub(crate) struct DecimalSum {
    units: i128,
    scale: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub(crate) enum SumError {
    #[error("non-numeric lexical form {0:?}")]
    NonNumeric(String),
    #[error("numeric overflow while summing")]
    Overflow,
}

impl DecimalSum {
    pub fn add(&mut self, lexical: &str) -> Result<(), SumError> {
        let parts = split(lexical).ok_or_else(|| SumError::NonNumeric(lexical.into()))?;
        let scale = u32::try_from(parts.frac.len()).map_err(|_| SumError::Overflow)?;
        let mut units: i128 = 0;
        for b in parts.int.bytes().chain(parts.frac.bytes()) {
            units = units
                .checked_mul(10)
                .and_then(|u| u.checked_add(i128::from(b - b'0')))
                .ok_or(SumError::Overflow)?;
        }
        if parts.negative {
            units = -units;
        }
        // Align scales before adding.
        while self.scale < scale {
            self.units = self.units.checked_mul(10).ok_or(SumError::Overflow)?;
            self.scale += 1;
        }
        let mut addend = units;
        let mut addend_scale = scale;
        while addend_scale < self.scale {
            addend = addend.checked_mul(10).ok_or(SumError::Overflow)?;
            addend_scale += 1;
        }
        self.units = self.units.checked_add(addend).ok_or(SumError::Overflow)?;
        Ok(())
    }

    /// Canonical lexical form: no trailing fraction zeros, no `-0`.
    pub fn lexical(&self) -> String {
        let negative = self.units < 0;
        let digits = alloc::format!("{}", self.units.unsigned_abs());
        let scale = self.scale as usize;
        let mut int;
        let mut frac;
        if digits.len() > scale {
            int = String::from(&digits[..digits.len() - scale]);
            frac = String::from(&digits[digits.len() - scale..]);
        } else {
            int = String::from("0");
            frac = alloc::format!("{}{}", "0".repeat(scale - digits.len()), digits);
        }
        while frac.ends_with('0') {
            frac.pop();
        }
        if int.is_empty() {
            int.push('0');
        }
        let mut out = String::new();
        if negative && !(int == "0" && frac.is_empty()) {
            out.push('-');
        }
        out.push_str(&int);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(&frac);
        }
        out
    }
}
