//! Second-order polynomial sequences `H_n = x H_{n-1} + y H_{n-2}`.
//!
//! Terms are defined for every integer `n`. Negative indices come from the
//! back-recurrence `H_{n} = y^{-1} (H_{n+2} - x H_{n+1})`, which only ever
//! introduces negative powers of `y`.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{LaurentBiPoly, Term};
use crate::rational::RationalValue;

/// Initial terms of a sequence obeying `H_n = x H_{n-1} + y H_{n-2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqSpec {
    pub a0: LaurentBiPoly,
    pub a1: LaurentBiPoly,
    pub label: String,
}

impl SeqSpec {
    pub fn new(label: impl Into<String>, a0: LaurentBiPoly, a1: LaurentBiPoly) -> Self {
        SeqSpec {
            a0,
            a1,
            label: label.into(),
        }
    }

    pub fn fibonacci() -> Self {
        SeqSpec::new("F", LaurentBiPoly::zero(), LaurentBiPoly::one())
    }

    pub fn lucas() -> Self {
        SeqSpec::new("L", LaurentBiPoly::constant(2), LaurentBiPoly::var_x())
    }
}

fn forward_step(prev: &LaurentBiPoly, prev2: &LaurentBiPoly) -> LaurentBiPoly {
    prev.shift(1, 0).add(&prev2.shift(0, 1))
}

/// `H_n` from `H_{n+1}` and `H_{n+2}`.
fn backward_step(next: &LaurentBiPoly, next2: &LaurentBiPoly) -> LaurentBiPoly {
    next2.sub(&next.shift(1, 0)).shift(0, -1)
}

/// Uncached evaluation of the recurrence at any integer index.
pub fn general_term(spec: &SeqSpec, n: i64) -> LaurentBiPoly {
    let (mut a, mut b) = (spec.a0.clone(), spec.a1.clone());
    if n >= 0 {
        // invariant: a = H_k, b = H_{k+1}
        for _ in 0..n {
            let next = forward_step(&b, &a);
            a = std::mem::replace(&mut b, next);
        }
        a
    } else {
        // invariant: a = H_k, b = H_{k+1}, walking k downward
        for _ in 0..(-n) {
            let prev = backward_step(&a, &b);
            b = std::mem::replace(&mut a, prev);
        }
        a
    }
}

#[derive(Debug, Default)]
struct SeqCache {
    /// `forward[k] = H_k`
    forward: Vec<Arc<LaurentBiPoly>>,
    /// `backward[k] = H_{-(k+1)}`
    backward: Vec<Arc<LaurentBiPoly>>,
}

/// A sequence with a grow-only memo table. Entries are published whole
/// under the write lock, so readers never see partial terms.
#[derive(Debug)]
pub struct Sequence {
    spec: SeqSpec,
    cache: RwLock<SeqCache>,
}

impl Sequence {
    pub fn new(spec: SeqSpec) -> Self {
        let cache = SeqCache {
            forward: vec![Arc::new(spec.a0.clone()), Arc::new(spec.a1.clone())],
            backward: Vec::new(),
        };
        Sequence {
            spec,
            cache: RwLock::new(cache),
        }
    }

    pub fn spec(&self) -> &SeqSpec {
        &self.spec
    }

    pub fn term(&self, n: i64) -> Arc<LaurentBiPoly> {
        {
            let cache = self.cache.read().expect("sequence cache poisoned");
            if let Some(t) = Self::lookup(&cache, n) {
                return t;
            }
        }
        let mut cache = self.cache.write().expect("sequence cache poisoned");
        if n >= 0 {
            let target = n as usize;
            while cache.forward.len() <= target {
                let len = cache.forward.len();
                let next = forward_step(&cache.forward[len - 1], &cache.forward[len - 2]);
                cache.forward.push(Arc::new(next));
            }
        } else {
            let target = (-n - 1) as usize;
            while cache.backward.len() <= target {
                let k = cache.backward.len();
                // H_{-(k+1)} from H_{-k} and H_{-k+1}
                let next = Self::lookup(&cache, -(k as i64)).expect("cached");
                let next2 = Self::lookup(&cache, 1 - k as i64).expect("cached");
                let prev = backward_step(&next, &next2);
                cache.backward.push(Arc::new(prev));
            }
        }
        Self::lookup(&cache, n).expect("just extended")
    }

    fn lookup(cache: &SeqCache, n: i64) -> Option<Arc<LaurentBiPoly>> {
        if n >= 0 {
            cache.forward.get(n as usize).cloned()
        } else {
            cache.backward.get((-n - 1) as usize).cloned()
        }
    }
}

fn fib_sequence() -> &'static Sequence {
    static FIB: OnceLock<Sequence> = OnceLock::new();
    FIB.get_or_init(|| Sequence::new(SeqSpec::fibonacci()))
}

fn lucas_sequence() -> &'static Sequence {
    static LUCAS: OnceLock<Sequence> = OnceLock::new();
    LUCAS.get_or_init(|| Sequence::new(SeqSpec::lucas()))
}

/// Shared handle to the memoized `F_n(x, y)`.
pub fn fib_ref(n: i64) -> Arc<LaurentBiPoly> {
    fib_sequence().term(n)
}

pub fn lucas_ref(n: i64) -> Arc<LaurentBiPoly> {
    lucas_sequence().term(n)
}

/// Bivariate Fibonacci polynomial `F_n(x, y)`, any integer `n`.
pub fn fib(n: i64) -> LaurentBiPoly {
    (*fib_ref(n)).clone()
}

/// Bivariate Lucas polynomial `L_n(x, y)`, any integer `n`.
pub fn lucas(n: i64) -> LaurentBiPoly {
    (*lucas_ref(n)).clone()
}

/// `C(n, k)` by the running product `prod (n-k+j)/j`, each step exact.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1u32);
    for j in 1..=k {
        acc *= n - k + j;
        acc /= j;
    }
    acc
}

/// `F_n` straight from binomial coefficients:
/// `F_{m+1} = sum_{i=0}^{floor(m/2)} C(m-i, i) x^{m-2i} y^i`.
/// `fib_closed(0)` is the zero polynomial.
pub fn fib_closed(n: u32) -> LaurentBiPoly {
    closed_sum(n, true)
}

pub fn fib_univariate_closed(n: u32) -> LaurentBiPoly {
    closed_sum(n, false)
}

fn closed_sum(n: u32, bivariate: bool) -> LaurentBiPoly {
    if n == 0 {
        return LaurentBiPoly::zero();
    }
    let m = n - 1;
    LaurentBiPoly::from_terms((0..=m / 2).map(|i| Term {
        ex: m - 2 * i,
        ey: if bivariate { i as i32 } else { 0 },
        coeff: binomial(u64::from(m - i), u64::from(i)),
    }))
}

/// Univariate Fibonacci polynomial `F_n(x)` by its own recurrence
/// `F_n = x F_{n-1} + F_{n-2}`.
pub fn fib_univariate(n: u32) -> LaurentBiPoly {
    let (mut a, mut b) = (LaurentBiPoly::zero(), LaurentBiPoly::one());
    for _ in 0..n {
        let next = b.shift(1, 0).add(&a);
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Partial evaluation `y := c`. Fails if a coefficient of the result is not
/// an integer.
pub fn substitute_y(p: &LaurentBiPoly, c: &RationalValue) -> Result<LaurentBiPoly> {
    if c.is_zero() && p.has_negative_ey() {
        return Err(Error::EvalAtPole);
    }
    let mut out: Vec<Term> = Vec::new();
    let mut current: Option<(u32, RationalValue)> = None;
    let flush = |entry: Option<(u32, RationalValue)>, out: &mut Vec<Term>| -> Result<()> {
        if let Some((ex, v)) = entry {
            if !v.is_integer() {
                return Err(Error::NonIntegerResult(format!("{v} at x^{ex}")));
            }
            out.push(Term {
                ex,
                ey: 0,
                coeff: v.numerator().clone(),
            });
        }
        Ok(())
    };
    // Terms are grouped by descending ex already.
    for t in p.terms() {
        let v = &RationalValue::integer(t.coeff.clone()) * &c.pow(t.ey)?;
        current = match current.take() {
            Some((ex, acc)) if ex == t.ex => Some((ex, &acc + &v)),
            prev => {
                flush(prev, &mut out)?;
                Some((t.ex, v))
            }
        };
    }
    flush(current, &mut out)?;
    Ok(LaurentBiPoly::from_terms(out))
}

/// `F_{k,n}` with `F_{k,0} = 0`, `F_{k,1} = 1`, `F_{k,n+1} = k F_{k,n} + F_{k,n-1}`;
/// negative `n` follow the back-recurrence.
pub fn k_fib_number(k: &RationalValue, n: i64) -> RationalValue {
    let (mut a, mut b) = (RationalValue::zero(), RationalValue::one());
    if n >= 0 {
        for _ in 0..n {
            let next = &(k * &b) + &a;
            a = std::mem::replace(&mut b, next);
        }
    } else {
        for _ in 0..(-n) {
            let prev = &b - &(k * &a);
            b = std::mem::replace(&mut a, prev);
        }
    }
    a
}
