//! Rounded decimal rendering of exact rationals, for display only. All
//! comparisons anywhere in the tool happen on exact values.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Renders a nonnegative rational with `sig` significant digits, rounding
/// half away from zero. Plain decimal notation where reasonable, scientific
/// for extreme magnitudes.
pub fn decimal_approx(r: &num_rational::BigRational, sig: u32) -> String {
    assert!(sig >= 1);
    assert!(!r.is_negative(), "labels are nonnegative");
    if r.is_zero() {
        return "0".to_string();
    }
    let n = r.numer();
    let d = r.denom();
    let pow10 = |k: i64| -> BigInt {
        assert!(k >= 0);
        BigInt::from(10).pow(k as u32)
    };
    // Exponent e with 10^e <= n/d < 10^(e+1).
    let mut e = n.to_string().len() as i64 - d.to_string().len() as i64;
    let at_least = |e: i64| -> bool {
        if e >= 0 {
            *n >= d * pow10(e)
        } else {
            n * pow10(-e) >= *d
        }
    };
    while !at_least(e) {
        e -= 1;
    }
    while at_least(e + 1) {
        e += 1;
    }
    // Round n/d * 10^(sig-1-e) to an integer with exactly sig digits.
    let shift = sig as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (n * pow10(shift), d.clone())
    } else {
        (n.clone(), d * pow10(-shift))
    };
    let scaled = (BigInt::from(2) * num + &den) / (BigInt::from(2) * den);
    let mut digits = scaled.to_string();
    if digits.len() > sig as usize {
        // 999... rounded up to 1000...: drop the extra trailing zero.
        digits.truncate(sig as usize);
        e += 1;
    }
    let trimmed = digits.trim_end_matches('0');
    let digits = if trimmed.is_empty() {
        &digits[..1]
    } else {
        trimmed
    };

    if (0..sig as i64).contains(&e) {
        let point = e as usize + 1;
        if digits.len() <= point {
            let mut out = digits.to_string();
            out.push_str(&"0".repeat(point - digits.len()));
            out
        } else {
            format!("{}.{}", &digits[..point], &digits[point..])
        }
    } else if (-7..0).contains(&e) {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
    } else if digits.len() == 1 {
        format!("{digits}e{e}")
    } else {
        format!("{}.{}e{e}", &digits[..1], &digits[1..])
    }
}
