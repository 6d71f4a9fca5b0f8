//! Exact evaluation of tower, wowzer and Ackermann-type bounds under a digit cap.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};

pub const DEFAULT_DIGIT_CAP: u64 = 1_000_000;

const LOG10_2: f64 = std::f64::consts::LOG10_2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundExpr {
    Int { value: BigUint },
    /// The argument of the enclosing `Iterate`.
    Var,
    Mul { a: Box<BoundExpr>, b: Box<BoundExpr> },
    Pow { base: Box<BoundExpr>, exp: Box<BoundExpr> },
    /// `T_m(1) = m`, `T_m(x+1) = T_m(x) 2^{T_m(x)}`.
    Tower { m: Box<BoundExpr>, x: Box<BoundExpr> },
    /// `W(1) = 1`, `W(x+1) = T_2(W(x))`.
    Wowzer { x: Box<BoundExpr> },
    /// `Ack_1(x) = 2^x`, `Ack_k(1) = 1`, `Ack_k(x) = Ack_{k-1}(Ack_k(x-1))`.
    Ackermann { k: u32, x: Box<BoundExpr> },
    /// `f` applied `times` times starting from `start`.
    Iterate { f: Box<BoundExpr>, times: Box<BoundExpr>, start: Box<BoundExpr> },
}

impl BoundExpr {
    pub fn int(v: impl Into<BigUint>) -> BoundExpr {
        BoundExpr::Int { value: v.into() }
    }

    pub fn tower(m: BoundExpr, x: BoundExpr) -> BoundExpr {
        BoundExpr::Tower { m: Box::new(m), x: Box::new(x) }
    }

    pub fn wowzer(x: BoundExpr) -> BoundExpr {
        BoundExpr::Wowzer { x: Box::new(x) }
    }

    pub fn ackermann(k: u32, x: BoundExpr) -> BoundExpr {
        BoundExpr::Ackermann { k, x: Box::new(x) }
    }

    pub fn iterate(f: BoundExpr, times: BoundExpr, start: BoundExpr) -> BoundExpr {
        BoundExpr::Iterate { f: Box::new(f), times: Box::new(times), start: Box::new(start) }
    }

    pub fn mul(a: BoundExpr, b: BoundExpr) -> BoundExpr {
        BoundExpr::Mul { a: Box::new(a), b: Box::new(b) }
    }

    pub fn pow(base: BoundExpr, exp: BoundExpr) -> BoundExpr {
        BoundExpr::Pow { base: Box::new(base), exp: Box::new(exp) }
    }
}

impl fmt::Display for BoundExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundExpr::Int { value } => {
                let s = value.to_string();
                if s.len() > 24 {
                    write!(f, "<{}-digit integer>", s.len())
                } else {
                    f.write_str(&s)
                }
            }
            BoundExpr::Var => f.write_str("x"),
            BoundExpr::Mul { a, b } => write!(f, "({a})*({b})"),
            BoundExpr::Pow { base, exp } => write!(f, "({base})^({exp})"),
            BoundExpr::Tower { m, x } => write!(f, "T_{m}({x})"),
            BoundExpr::Wowzer { x } => write!(f, "W({x})"),
            BoundExpr::Ackermann { k, x } => write!(f, "Ack_{k}({x})"),
            BoundExpr::Iterate { f: g, times, start } => write!(f, "[x -> {g}]^({times})({start})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BoundValue {
    Exact { value: BigUint },
    /// The first evaluation step whose value exceeded the digit cap.
    Overflow { at: String },
}

impl BoundValue {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            BoundValue::Exact { value } => Some(value),
            BoundValue::Overflow { .. } => None,
        }
    }

    /// `value ≥ x`. An overflowed value exceeds every integer shorter than the cap.
    pub fn at_least(&self, x: &BigUint) -> bool {
        match self {
            BoundValue::Exact { value } => value >= x,
            BoundValue::Overflow { .. } => true,
        }
    }
}

type Step = std::result::Result<BigUint, String>;

struct Evaluator {
    cap: u64,
    vars: Vec<BigUint>,
}

fn too_long(v: &BigUint, cap: u64) -> bool {
    let bits = v.bits();
    if bits == 0 {
        return false;
    }
    let lower = ((bits - 1) as f64 * LOG10_2).floor() as u64 + 1;
    let upper = (bits as f64 * LOG10_2).floor() as u64 + 1;
    if lower > cap + 1 {
        return true;
    }
    if upper + 1 < cap {
        return false;
    }
    v.to_string().len() as u64 > cap
}

impl Evaluator {
    fn check(&self, v: BigUint, label: impl FnOnce() -> String) -> Step {
        if too_long(&v, self.cap) {
            Err(label())
        } else {
            Ok(v)
        }
    }

    fn pow2(&self, x: &BigUint, label: impl FnOnce() -> String) -> Step {
        // 2^x has floor(x log10 2) + 1 digits.
        match x.to_u64() {
            Some(e) if (e as f64) * LOG10_2 <= self.cap as f64 + 2.0 => {
                self.check(BigUint::one() << e, label)
            }
            _ => Err(label()),
        }
    }

    /// `v * 2^v`, the tower step.
    fn tower_step(&self, v: &BigUint, label: impl Fn() -> String) -> Step {
        let p = self.pow2(v, &label)?;
        self.check(p * v, label)
    }

    fn tower(&self, m: BigUint, x: &BigUint) -> Step {
        let mut v = m.clone();
        let mut step = BigUint::one();
        while &step < x {
            step += 1u32;
            let next = self.tower_step(&v, || format!("T_{m}({step})"))?;
            if next == v {
                break;
            }
            v = next;
        }
        Ok(v)
    }

    fn wowzer(&self, x: &BigUint) -> Step {
        let two = BigUint::from(2u32);
        let mut v = BigUint::one();
        let mut step = BigUint::one();
        while &step < x {
            step += 1u32;
            v = self.tower(two.clone(), &v).map_err(|inner| format!("W({step}) via {inner}"))?;
        }
        Ok(v)
    }

    fn ackermann(&self, k: u32, x: &BigUint) -> Step {
        if k <= 1 {
            return self.pow2(x, || format!("Ack_1({x})"));
        }
        let mut v = BigUint::one();
        let mut step = BigUint::one();
        while &step < x {
            step += 1u32;
            let next = self
                .ackermann(k - 1, &v)
                .map_err(|inner| format!("Ack_{k}({step}) via {inner}"))?;
            if next == v {
                // Fixed point: every further step returns the same value.
                break;
            }
            v = next;
        }
        Ok(v)
    }

    fn eval(&mut self, e: &BoundExpr) -> std::result::Result<Step, crate::error::Error> {
        Ok(match e {
            BoundExpr::Int { value } => self.check(value.clone(), || format!("{e}")),
            BoundExpr::Var => match self.vars.last() {
                Some(v) => Ok(v.clone()),
                None => return precondition("variable used outside an iterate expression"),
            },
            BoundExpr::Mul { a, b } => {
                let a = self.eval(a)?;
                let b = self.eval(b)?;
                match (a, b) {
                    (Ok(a), Ok(b)) => self.check(a * b, || format!("{e}")),
                    (Err(s), _) | (_, Err(s)) => Err(s),
                }
            }
            BoundExpr::Pow { base, exp } => {
                let b = self.eval(base)?;
                let x = self.eval(exp)?;
                match (b, x) {
                    (Ok(b), Ok(x)) => self.power(&b, &x, || format!("{e}")),
                    (Err(s), _) | (_, Err(s)) => Err(s),
                }
            }
            BoundExpr::Tower { m, x } => {
                let m = self.eval(m)?;
                let x = self.eval(x)?;
                match (m, x) {
                    (Ok(m), Ok(x)) => {
                        if x.is_zero() {
                            return precondition("tower argument must be at least 1");
                        }
                        self.tower(m, &x)
                    }
                    (Err(s), _) | (_, Err(s)) => Err(s),
                }
            }
            BoundExpr::Wowzer { x } => match self.eval(x)? {
                Ok(x) if x.is_zero() => return precondition("wowzer argument must be at least 1"),
                Ok(x) => self.wowzer(&x),
                Err(s) => Err(s),
            },
            BoundExpr::Ackermann { k, x } => match self.eval(x)? {
                Ok(x) if x.is_zero() || *k == 0 => {
                    return precondition("Ackermann level and argument must be at least 1")
                }
                Ok(x) => self.ackermann(*k, &x),
                Err(s) => Err(s),
            },
            BoundExpr::Iterate { f, times, start } => {
                let t = match self.eval(times)? {
                    Ok(t) => t,
                    Err(s) => return Ok(Err(s)),
                };
                let mut v = match self.eval(start)? {
                    Ok(v) => v,
                    Err(s) => return Ok(Err(s)),
                };
                let mut i = BigUint::zero();
                while i < t {
                    i += 1u32;
                    self.vars.push(v.clone());
                    let next = self.eval(f);
                    self.vars.pop();
                    match next? {
                        Ok(n) if n == v => break,
                        Ok(n) => v = n,
                        Err(s) => return Ok(Err(format!("iteration {i} of {e}: {s}"))),
                    }
                }
                Ok(v)
            }
        })
    }

    fn power(&self, b: &BigUint, x: &BigUint, label: impl Fn() -> String) -> Step {
        if b.is_zero() || b.is_one() || x.is_zero() {
            return Ok(if x.is_zero() { BigUint::one() } else { b.clone() });
        }
        let digits = (b.bits() as f64 - 1.0) * LOG10_2;
        match x.to_u64() {
            Some(e) if digits * e as f64 <= self.cap as f64 + 2.0 => {
                let e32 = u32::try_from(e).map_err(|_| label())?;
                self.check(num_traits::pow::pow(b.clone(), e32 as usize), label)
            }
            _ => Err(label()),
        }
    }
}

/// Evaluates `expr` exactly, or reports the first step exceeding `digit_cap` decimal digits.
pub fn eval_bound(expr: &BoundExpr, digit_cap: u64) -> Result<BoundValue> {
    let mut ev = Evaluator { cap: digit_cap.max(1), vars: Vec::new() };
    Ok(match ev.eval(expr)? {
        Ok(value) => BoundValue::Exact { value },
        Err(at) => BoundValue::Overflow { at },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(e: &BoundExpr) -> u128 {
        eval_bound(e, 1000).unwrap().exact().unwrap().to_u128().unwrap()
    }

    #[test]
    fn tower_two_unrolls() {
        let t = |x: u32| BoundExpr::tower(BoundExpr::int(2u32), BoundExpr::int(x));
        assert_eq!(exact(&t(1)), 2);
        assert_eq!(exact(&t(2)), 8);
        assert_eq!(exact(&t(3)), 2048);
        let four = eval_bound(&t(4), 1000).unwrap();
        assert_eq!(four.exact().unwrap(), &(BigUint::from(2048u32) << 2048u32));
    }

    #[test]
    fn wowzer_unrolls() {
        let w = |x: u32| BoundExpr::wowzer(BoundExpr::int(x));
        assert_eq!(exact(&w(1)), 1);
        assert_eq!(exact(&w(2)), 2);
        assert_eq!(exact(&w(3)), 8);
        // W(4) = T_2(8) is far beyond any reasonable cap.
        assert!(matches!(eval_bound(&w(4), 1_000_000).unwrap(), BoundValue::Overflow { .. }));
    }

    #[test]
    fn overflow_marker_is_deterministic() {
        let e = BoundExpr::tower(BoundExpr::int(2u32), BoundExpr::int(5u32));
        let a = eval_bound(&e, 100).unwrap();
        let b = eval_bound(&e, 100).unwrap();
        assert_eq!(a, b);
        match a {
            BoundValue::Overflow { at } => assert_eq!(at, "T_2(4)"),
            _ => panic!("expected overflow"),
        }
    }

    #[test]
    fn ackermann_level_two_is_a_tower_of_twos() {
        let a = |x: u32| exact(&BoundExpr::ackermann(2, BoundExpr::int(x)));
        assert_eq!((1..=5).map(a).collect::<Vec<_>>(), vec![1, 2, 4, 16, 65536]);
    }

    #[test]
    fn iterate_applies_the_body() {
        // x -> 2x, five times from 3.
        let f = BoundExpr::mul(BoundExpr::int(2u32), BoundExpr::Var);
        let e = BoundExpr::iterate(f, BoundExpr::int(5u32), BoundExpr::int(3u32));
        assert_eq!(exact(&e), 96);
    }

    #[test]
    fn huge_arguments_terminate() {
        let big = BoundExpr::pow(BoundExpr::int(10u32), BoundExpr::int(50u32));
        let e = BoundExpr::tower(BoundExpr::int(3u32), big.clone());
        assert!(matches!(eval_bound(&e, 1000).unwrap(), BoundValue::Overflow { .. }));
        let a3 = BoundExpr::ackermann(3, big);
        assert_eq!(eval_bound(&a3, 1000).unwrap().exact().unwrap(), &BigUint::one());
    }

    #[test]
    fn ill_formed_arguments_are_rejected() {
        assert!(eval_bound(&BoundExpr::tower(BoundExpr::int(2u32), BoundExpr::int(0u32)), 10).is_err());
        assert!(eval_bound(&BoundExpr::Var, 10).is_err());
    }
}
