use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("expected a positive integer, got 0")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{q} is not a prime power ({q} = {})", fmt_factors(.factors))]
    NotPrimePower { q: u64, factors: Vec<(u64, u32)> },
    #[error("{a} is not invertible modulo {m}")]
    NotCoprime { a: u64, m: u64 },
    #[error("empty input")]
    Empty,
    #[error("ring shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<u64>, right: Vec<u64> },
    #[error("inverse of zero")]
    InverseOfZero,
    #[error("no element of order {r} in a field with {order} elements")]
    NoRootOfUnity { r: u64, order: u128 },
    #[error("field with {base_order}^{degree} elements is too large to handle")]
    FieldTooLarge { base_order: u128, degree: u32 },
    #[error("partial degree bound violated in variable {var}: degree {degree} >= {bound}")]
    DegreeBound { var: usize, degree: u64, bound: u64 },
    #[error("group element {0:?} is out of range")]
    OutOfRange(Vec<u64>),
    #[error("ring dimension {size} exceeds the verification budget {budget}")]
    BudgetExceeded { size: u64, budget: u64 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

fn fmt_factors(factors: &[(u64, u32)]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, (p, k)) in factors.iter().enumerate() {
        if i > 0 {
            s.push_str(" · ");
        }
        if *k == 1 {
            let _ = write!(s, "{p}");
        } else {
            let _ = write!(s, "{p}^{k}");
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}
