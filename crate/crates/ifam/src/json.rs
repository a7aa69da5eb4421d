// Exact numbers in JSON: integers as bare numbers of any length,
// non-integral rationals as "p/q" strings.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde_json::{Number, Value};

pub fn big(x: &BigUint) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal integer"))
}

pub fn bigi(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal integer"))
}

pub fn rat(x: &BigRational) -> Value {
    if x.denom().is_one() {
        bigi(x.numer())
    } else {
        Value::String(format!("{}/{}", x.numer(), x.denom()))
    }
}

/// Parse "17", "7/2" or "3.25" into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches('-'), fp);
        let mut num: BigInt = digits.parse().ok()?;
        if neg {
            num = -num;
        }
        let den = BigInt::from(10u32).pow(fp.len() as u32);
        return Some(BigRational::new(num, den));
    }
    Some(BigRational::from_integer(s.parse().ok()?))
}
