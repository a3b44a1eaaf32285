//! Identity catalog and range-sweep verification.
//!
//! Every identity is checked instance by instance as an exact equality of
//! canonical polynomials. Misprinted statements are catalogued next to
//! their corrected forms and flagged as expected failures.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::derivatives::{
    altsum_dx, altsum_dy, conv_dx, conv_dy, cross_derivative, d_dx_closed, d_dx_direct, d_dx_univariate_closed,
    d_dy_closed, d_dy_direct, lucas_dx, rational_dx, rational_dx_shifted, reconstruct_fib, rth_dx_recurrence,
    rth_dx_recurrence_shifted, Claim,
};
use crate::error::{Error, Result};
use crate::poly::LaurentBiPoly;
use crate::rational::RationalValue;
use crate::sequences::{
    fib_closed, fib_ref, fib_univariate, fib_univariate_closed, general_term, lucas_ref, substitute_y, SeqSpec, Sequence,
};

/// Inclusive integer interval `lo..hi`. Bounds at `i64::MIN`/`i64::MAX`
/// stand for "unbounded".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub const ALL: Interval = Interval {
        lo: i64::MIN,
        hi: i64::MAX,
    };

    pub const fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    pub const fn from(lo: i64) -> Self {
        Interval { lo, hi: i64::MAX }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            self.hi.abs_diff(self.lo) + 1
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let i = Interval::new(self.lo.max(other.lo), self.hi.min(other.hi));
        (!i.is_empty()).then_some(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo != i64::MIN {
            write!(f, "{}", self.lo)?;
        }
        f.write_str("..")?;
        if self.hi != i64::MAX {
            write!(f, "{}", self.hi)?;
        }
        Ok(())
    }
}

/// Parses `a..b` (inclusive), with `a` or `b` optionally omitted, or a single integer.
impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bound = |t: &str, column: usize, default: i64| -> Result<i64> {
            if t.is_empty() {
                return Ok(default);
            }
            t.parse::<i64>().map_err(|_| Error::Parse {
                line: 1,
                column,
                message: format!("invalid range bound `{t}` in `{s}`"),
            })
        };
        match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                Ok(Interval::new(
                    bound(a, 1, i64::MIN)?,
                    bound(b, a.len() + 3, i64::MAX)?,
                ))
            }
            None => {
                if s.is_empty() {
                    return Err(Error::parse("empty range"));
                }
                let v = bound(s, 1, 0)?;
                Ok(Interval::new(v, v))
            }
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

type InstanceFn = fn(i64, u32) -> Result<Claim>;

/// One catalogued identity: `lhs(n, r) = rhs(n, r)` over a validity range.
#[derive(Clone)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    pub citation: &'static str,
    pub statement: &'static str,
    pub valid_n: Interval,
    pub valid_r: Option<Interval>,
    /// Joint constraint on `(n, r)` beyond the two intervals.
    pub admits: fn(i64, u32) -> bool,
    /// Printed forms known to be wrong.
    pub expect_fail: bool,
    pub instance: InstanceFn,
}

impl IdentityDescriptor {
    pub fn build(&self, n: i64, r: u32) -> Result<Claim> {
        (self.instance)(n, r)
    }
}

impl fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("id", &self.id)
            .field("citation", &self.citation)
            .field("valid_n", &self.valid_n)
            .field("valid_r", &self.valid_r)
            .field("expect_fail", &self.expect_fail)
            .finish()
    }
}

fn always(_: i64, _: u32) -> bool {
    true
}

fn claim(lhs: LaurentBiPoly, rhs: LaurentBiPoly) -> Claim {
    Claim { lhs, rhs }
}

fn x() -> LaurentBiPoly {
    LaurentBiPoly::var_x()
}

fn y() -> LaurentBiPoly {
    LaurentBiPoly::var_y()
}

/// Generic member of the family with non-trivial initial terms.
fn generic_h() -> &'static Sequence {
    static H: OnceLock<Sequence> = OnceLock::new();
    H.get_or_init(|| Sequence::new(generic_h_spec()))
}

fn generic_h_spec() -> SeqSpec {
    SeqSpec::new(
        "H",
        LaurentBiPoly::constant(2).sub(&y()),
        x().add(&LaurentBiPoly::constant(3)),
    )
}

fn eq2_1(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(
        fib_univariate(n as u32),
        substitute_y(&fib_ref(n), &RationalValue::one())?,
    ))
}

fn eq2_2(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(fib_univariate(n as u32), fib_univariate_closed(n as u32)))
}

fn eq2_3(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(fib_univariate(n as u32).diff_x(), d_dx_univariate_closed(n)?))
}

fn eq3_1(n: i64, _: u32) -> Result<Claim> {
    let h = generic_h();
    Ok(claim(
        general_term(h.spec(), n),
        h.term(n - 1).shift(1, 0).add(&h.term(n - 2).shift(0, 1)),
    ))
}

fn eq3_2(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(
        (*fib_ref(n)).clone(),
        fib_ref(n - 1).shift(1, 0).add(&fib_ref(n - 2).shift(0, 1)),
    ))
}

fn eq3_3(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(
        (*lucas_ref(n)).clone(),
        lucas_ref(n - 1).shift(1, 0).add(&lucas_ref(n - 2).shift(0, 1)),
    ))
}

fn eq3_4(n: i64, _: u32) -> Result<Claim> {
    Ok(claim((*fib_ref(n)).clone(), fib_closed(n as u32)))
}

fn eq3_5(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(
        (*lucas_ref(n)).clone(),
        fib_ref(n + 1).add(&fib_ref(n - 1).shift(0, 1)),
    ))
}

fn eq3_6(n: i64, _: u32) -> Result<Claim> {
    let disc = LaurentBiPoly::monomial(2, 0, 1).add(&LaurentBiPoly::monomial(0, 1, 4));
    Ok(claim(
        disc.mul(&fib_ref(n)),
        lucas_ref(n + 1).add(&lucas_ref(n - 1).shift(0, 1)),
    ))
}

fn eq3_7(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(lucas_dx(n), fib_ref(n).scale(n)))
}

fn eq4_1(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(d_dx_direct(n, 1), d_dx_closed(n)?))
}

fn eq4_2(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(d_dy_direct(n, 1), d_dy_closed(n)?))
}

fn eq4_3(n: i64, _: u32) -> Result<Claim> {
    Ok(cross_derivative(n))
}

/// `r + 1` derivatives of the recurrence `F_{n+1} = x F_n + y F_{n-1}`.
fn eq4_4(n: i64, r: u32) -> Result<Claim> {
    Ok(claim(
        d_dx_direct(n + 1, r + 1),
        d_dx_direct(n, r)
            .scale(r + 1)
            .add(&d_dx_direct(n, r + 1).shift(1, 0))
            .add(&d_dx_direct(n - 1, r + 1).shift(0, 1)),
    ))
}

/// The order-`r` recurrence differentiated once more in `x`.
fn eq4_5(n: i64, r: u32) -> Result<Claim> {
    let rr = i64::from(r);
    let rhs = d_dx_direct(n, r)
        .scale(n)
        .add(&d_dx_direct(n, r + 1).scale(n).shift(1, 0))
        .add(&d_dx_direct(n - 1, r + 1).scale(n + rr).shift(0, 1))
        .div_exact_scalar(n - rr)?;
    Ok(claim(d_dx_direct(n + 1, r + 1), rhs))
}

fn thm1(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(d_dx_direct(n, 1), conv_dx(n)?))
}

fn cor1(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(d_dy_direct(n, 1), conv_dy(n)?))
}

fn thm2(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(d_dx_direct(n + 1, 1), altsum_dx(n)?))
}

fn cor2_printed(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(d_dy_direct(n, 1), altsum_dy(n, false)?))
}

fn cor2_corrected(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(d_dy_direct(n, 1), altsum_dy(n, true)?))
}

fn thm3(n: i64, _: u32) -> Result<Claim> {
    Ok(claim((*fib_ref(n)).clone(), reconstruct_fib(n)?))
}

fn thm4(n: i64, _: u32) -> Result<Claim> {
    Ok(claim(d_dx_direct(n, 1), rational_dx(n)?))
}

fn cor3_printed(n: i64, _: u32) -> Result<Claim> {
    rational_dx_shifted(n, false)
}

fn cor3_corrected(n: i64, _: u32) -> Result<Claim> {
    rational_dx_shifted(n, true)
}

fn thm5(n: i64, r: u32) -> Result<Claim> {
    Ok(claim(d_dx_direct(n + 1, r), rth_dx_recurrence(n, r)?))
}

fn cor4_printed(n: i64, r: u32) -> Result<Claim> {
    rth_dx_recurrence_shifted(n, r, false)
}

fn cor4_corrected(n: i64, r: u32) -> Result<Claim> {
    rth_dx_recurrence_shifted(n, r, true)
}

fn n_above_r(n: i64, r: u32) -> bool {
    n > i64::from(r)
}

fn n_above_r_plus_1(n: i64, r: u32) -> bool {
    n > i64::from(r) + 1
}

const fn entry(
    id: &'static str,
    citation: &'static str,
    statement: &'static str,
    valid_n: Interval,
    instance: InstanceFn,
) -> IdentityDescriptor {
    IdentityDescriptor {
        id,
        citation,
        statement,
        valid_n,
        valid_r: None,
        admits: always,
        expect_fail: false,
        instance,
    }
}

/// Every identity, in a fixed order.
pub fn catalog() -> &'static [IdentityDescriptor] {
    static CATALOG: OnceLock<Vec<IdentityDescriptor>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

fn build_catalog() -> Vec<IdentityDescriptor> {
    let order_r = Some(Interval::from(1));
    vec![
        entry(
            "eq2.1",
            "Eq (2.1): univariate recurrence F_{n+1}(x) = x F_n(x) + F_{n-1}(x)",
            "F_n(x) = F_n(x, 1)",
            Interval::from(0),
            eq2_1,
        ),
        entry(
            "eq2.2",
            "Eq (2.2): univariate closed form",
            "F_{n+1}(x) = sum C(n-i, i) x^{n-2i}",
            Interval::from(1),
            eq2_2,
        ),
        entry(
            "eq2.3",
            "Eq (2.3): univariate derivative closed form",
            "F'_{n+1}(x) = sum C(n-i, i) (n-2i) x^{n-1-2i}",
            Interval::from(1),
            eq2_3,
        ),
        entry(
            "eq3.1",
            "Eq (3.1): generalized recurrence H_n = x H_{n-1} + y H_{n-2}",
            "H_n = x H_{n-1} + y H_{n-2} with H_0 = 2 - y, H_1 = x + 3",
            Interval::ALL,
            eq3_1,
        ),
        entry(
            "eq3.2",
            "Eq (3.2): bivariate Fibonacci recurrence",
            "F_n = x F_{n-1} + y F_{n-2}",
            Interval::ALL,
            eq3_2,
        ),
        entry(
            "eq3.3",
            "Eq (3.3): bivariate Lucas recurrence",
            "L_n = x L_{n-1} + y L_{n-2}",
            Interval::ALL,
            eq3_3,
        ),
        entry(
            "eq3.4",
            "Eq (3.4): bivariate Fibonacci closed form",
            "F_{n+1} = sum C(n-i, i) x^{n-2i} y^i",
            Interval::from(1),
            eq3_4,
        ),
        entry(
            "eq3.5",
            "Eq (3.5): Lucas from Fibonacci",
            "L_n = F_{n+1} + y F_{n-1}",
            Interval::ALL,
            eq3_5,
        ),
        entry(
            "eq3.6",
            "Eq (3.6): Fibonacci from Lucas",
            "(x^2 + 4y) F_n = L_{n+1} + y L_{n-1}",
            Interval::ALL,
            eq3_6,
        ),
        entry(
            "eq3.7",
            "Eq (3.7): x-derivative of Lucas",
            "dL_n/dx = n F_n",
            Interval::ALL,
            eq3_7,
        ),
        entry(
            "eq4.1",
            "Eq (4.1): x-derivative closed form",
            "dF_{n+1}/dx = sum C(n-i, i) (n-2i) x^{n-1-2i} y^i",
            Interval::from(1),
            eq4_1,
        ),
        entry(
            "eq4.2",
            "Eq (4.2): y-derivative closed form",
            "dF_{n+1}/dy = sum_{i <= n/2} C(n-i, i) i x^{n-2i} y^{i-1}",
            Interval::from(1),
            eq4_2,
        ),
        entry(
            "eq4.3",
            "Eq (4.3): cross-derivative relation",
            "dF_n/dx = dF_{n+1}/dy",
            Interval::ALL,
            eq4_3,
        ),
        IdentityDescriptor {
            valid_r: Some(Interval::from(0)),
            ..entry(
                "eq4.4",
                "Eq (4.4): recurrence differentiated r+1 times",
                "d^{r+1}F_{n+1} = (r+1) d^r F_n + x d^{r+1} F_n + y d^{r+1} F_{n-1}",
                Interval::ALL,
                eq4_4,
            )
        },
        IdentityDescriptor {
            valid_r: order_r,
            admits: n_above_r,
            ..entry(
                "eq4.5",
                "Eq (4.5): order-r recurrence differentiated once",
                "(n-r) d^{r+1}F_{n+1} = n d^r F_n + n x d^{r+1}F_n + (n+r) y d^{r+1}F_{n-1}, n > r",
                Interval::from(0),
                eq4_5,
            )
        },
        entry(
            "thm1",
            "Theorem 1: convolution form of dF_n/dx",
            "dF_n/dx = sum_{i=1}^{n-1} F_i F_{n-i}, n > 1",
            Interval::from(2),
            thm1,
        ),
        entry(
            "cor1",
            "Corollary 1: convolution form of dF_n/dy",
            "dF_n/dy = sum_{i=1}^{n-2} F_i F_{n-1-i}, n > 1",
            Interval::from(2),
            cor1,
        ),
        entry(
            "thm2",
            "Theorem 2: alternating-sum form of dF_{n+1}/dx",
            "dF_{n+1}/dx = sum (-1)^i (n-2i) F_{n-2i} y^i, n >= 1",
            Interval::from(1),
            thm2,
        ),
        IdentityDescriptor {
            expect_fail: true,
            ..entry(
                "cor2.printed",
                "Corollary 2 as printed",
                "dF_n/dy = sum (n-2-2i) F_{n-2-2i} y^i, n >= 3",
                Interval::from(3),
                cor2_printed,
            )
        },
        entry(
            "cor2.corrected",
            "Corollary 2 with the sign factor (-1)^i of Theorem 2",
            "dF_n/dy = sum (-1)^i (n-2-2i) F_{n-2-2i} y^i, n >= 3",
            Interval::from(3),
            cor2_corrected,
        ),
        entry(
            "thm3",
            "Theorem 3: reconstruction of F_n from derivatives",
            "F_n = (1/n) [dF_{n+1}/dx + y dF_{n-1}/dx]",
            Interval::from(1),
            thm3,
        ),
        entry(
            "thm4",
            "Theorem 4: rational form of dF_n/dx",
            "dF_n/dx = [(n+1) F_{n+1} + (n-1) y F_{n-1} - 2x F_n] / (x^2 + 4y), n >= 1",
            Interval::from(1),
            thm4,
        ),
        IdentityDescriptor {
            expect_fail: true,
            ..entry(
                "cor3.printed",
                "Corollary 3 as printed",
                "dF_n/dx = [n F_n + (n-2) y F_{n-2} - 2x F_{n-1}] / (x^2 + 4y), n > 1",
                Interval::from(2),
                cor3_printed,
            )
        },
        entry(
            "cor3.corrected",
            "Corollary 3 with the left side shifted to dF_{n-1}/dx",
            "dF_{n-1}/dx = [n F_n + (n-2) y F_{n-2} - 2x F_{n-1}] / (x^2 + 4y), n > 1",
            Interval::from(2),
            cor3_corrected,
        ),
        IdentityDescriptor {
            valid_r: order_r,
            ..entry(
                "thm5",
                "Theorem 5: recurrence for the r-th x-derivative",
                "d^r F_{n+1} = 0 (n<r), r! (n=r), [n x d^r F_n + (n+r) y d^r F_{n-1}] / (n-r) (n>r)",
                Interval::from(0),
                thm5,
            )
        },
        IdentityDescriptor {
            valid_r: order_r,
            admits: n_above_r_plus_1,
            expect_fail: true,
            ..entry(
                "cor4.printed",
                "Corollary 4 as printed (recurrence branch)",
                "d^r F_{n+1} = [(n-1) x d^r F_{n-1} + (n-1+r) y d^r F_{n-2}] / (n-r-1), n > r + 1",
                Interval::from(3),
                cor4_printed,
            )
        },
        IdentityDescriptor {
            valid_r: order_r,
            admits: n_above_r_plus_1,
            ..entry(
                "cor4.corrected",
                "Corollary 4 with the left side shifted to d^r F_n",
                "d^r F_n = [(n-1) x d^r F_{n-1} + (n-1+r) y d^r F_{n-2}] / (n-r-1), n > r + 1",
                Interval::from(3),
                cor4_corrected,
            )
        },
    ]
}

pub fn lookup(id: &str) -> Result<&'static IdentityDescriptor> {
    catalog()
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Nothing was checked; never an unqualified pass.
    Vacuous,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Vacuous => "vacuous",
        })
    }
}

/// A failing instance. `difference` is `rhs - lhs` and is never zero; when
/// the right side could not even be built, `error` says why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: i64,
    pub r: Option<u32>,
    pub lhs: Option<LaurentBiPoly>,
    pub rhs: Option<LaurentBiPoly>,
    pub difference: Option<LaurentBiPoly>,
    pub error: Option<String>,
}

impl Counterexample {
    fn from_outcome(n: i64, r: Option<u32>, outcome: Result<Claim>) -> Option<Self> {
        match outcome {
            Ok(c) if c.holds() => None,
            Ok(c) => Some(Counterexample {
                n,
                r,
                difference: Some(c.difference()),
                lhs: Some(c.lhs),
                rhs: Some(c.rhs),
                error: None,
            }),
            Err(e) => Some(Counterexample {
                n,
                r,
                lhs: None,
                rhs: None,
                difference: None,
                error: Some(e.to_string()),
            }),
        }
    }

    pub fn describe(&self) -> String {
        let at = match self.r {
            Some(r) => format!("(n={}, r={})", self.n, r),
            None => format!("n={}", self.n),
        };
        match (&self.lhs, &self.rhs, &self.difference, &self.error) {
            (Some(l), Some(r), Some(d), _) => format!("{at}: lhs {l}, rhs {r}, rhs - lhs = {d}"),
            (_, _, _, Some(e)) => format!("{at}: {e}"),
            _ => at,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SweepOptions {
    /// Keep sweeping after the first failure and record every counterexample.
    pub all_counterexamples: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub id: String,
    pub citation: String,
    pub n_range: Option<Interval>,
    pub r_range: Option<Interval>,
    pub status: Status,
    pub expected_fail: bool,
    pub checked_count: u64,
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub all_counterexamples: Vec<Counterexample>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

/// Equality ignores timing.
impl PartialEq for VerifyReport {
    fn eq(&self, o: &Self) -> bool {
        self.id == o.id
            && self.citation == o.citation
            && self.n_range == o.n_range
            && self.r_range == o.r_range
            && self.status == o.status
            && self.expected_fail == o.expected_fail
            && self.checked_count == o.checked_count
            && self.counterexample == o.counterexample
            && self.all_counterexamples == o.all_counterexamples
    }
}

impl VerifyReport {
    /// CI semantics: expected-fail entries must fail, all others must not.
    pub fn ci_ok(&self) -> bool {
        if self.expected_fail {
            self.status == Status::Fail
        } else {
            self.status != Status::Fail
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }
}

const DEFAULT_R: Interval = Interval::new(1, 1);

/// Sweeps one identity over `n_range` (and `r_range` for order-indexed
/// identities, default `1..1`) intersected with its validity range.
pub fn verify(id: &str, n_range: Interval, r_range: Option<Interval>, opts: SweepOptions) -> Result<VerifyReport> {
    let desc = lookup(id)?;
    if n_range.is_empty() {
        return Err(Error::EmptyRange(format!("n = {n_range}")));
    }
    if let Some(r) = r_range.filter(|r| r.is_empty()) {
        return Err(Error::EmptyRange(format!("r = {r}")));
    }
    Ok(sweep(desc, n_range, r_range, opts))
}

fn sweep(desc: &IdentityDescriptor, n_range: Interval, r_range: Option<Interval>, opts: SweepOptions) -> VerifyReport {
    let start = Instant::now();
    let n_eff = desc.valid_n.intersect(&n_range);
    let r_eff = desc
        .valid_r
        .map(|valid| r_range.unwrap_or(DEFAULT_R).intersect(&valid).filter(|r| r.lo >= 0));
    let mut report = VerifyReport {
        id: desc.id.to_string(),
        citation: desc.citation.to_string(),
        n_range: n_eff,
        r_range: r_eff.flatten(),
        status: Status::Vacuous,
        expected_fail: desc.expect_fail,
        checked_count: 0,
        counterexample: None,
        all_counterexamples: Vec::new(),
        elapsed: Duration::ZERO,
    };

    let orders: Vec<Option<u32>> = match r_eff {
        None => vec![None],
        Some(None) => vec![],
        Some(Some(r)) => r.iter().map(|v| Some(v as u32)).collect(),
    };
    if let Some(ns) = n_eff {
        'outer: for n in ns.iter() {
            for &r in &orders {
                let rv = r.unwrap_or(0);
                if !(desc.admits)(n, rv) {
                    continue;
                }
                report.checked_count += 1;
                if let Some(cx) = Counterexample::from_outcome(n, r, desc.build(n, rv)) {
                    if report.counterexample.is_none() {
                        report.counterexample = Some(cx.clone());
                    }
                    if !opts.all_counterexamples {
                        break 'outer;
                    }
                    report.all_counterexamples.push(cx);
                }
            }
        }
    }
    report.status = if report.counterexample.is_some() {
        Status::Fail
    } else if report.checked_count == 0 {
        Status::Vacuous
    } else {
        Status::Pass
    };
    report.elapsed = start.elapsed();
    report
}

/// Runs every catalog entry concurrently; results come back in catalog order.
pub fn verify_all(n_range: Interval, r_range: Option<Interval>, opts: SweepOptions) -> Vec<VerifyReport> {
    catalog()
        .par_iter()
        .map(|desc| sweep(desc, n_range, r_range, opts))
        .collect()
}

/// One printed/corrected pair.
#[derive(Clone, Debug, Serialize)]
pub struct ErrataEntry {
    pub source: &'static str,
    pub printed_id: &'static str,
    pub corrected_id: &'static str,
    pub printed_statement: &'static str,
    pub corrected_statement: &'static str,
    /// Smallest failing instance of the printed form.
    pub counterexample: Option<Counterexample>,
    pub printed: VerifyReport,
    pub corrected: VerifyReport,
}

impl ErrataEntry {
    pub fn confirmed(&self) -> bool {
        self.printed.status == Status::Fail && self.corrected.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrataReport {
    pub entries: Vec<ErrataEntry>,
}

impl ErrataReport {
    pub fn confirmed(&self) -> bool {
        self.entries.iter().all(ErrataEntry::confirmed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{}\n", e.source));
            out.push_str(&format!("  printed:   {}\n", e.printed_statement));
            match &e.counterexample {
                Some(cx) => out.push_str(&format!("  smallest counterexample {}\n", cx.describe())),
                None => out.push_str("  no counterexample found\n"),
            }
            for cx in &e.printed.all_counterexamples {
                out.push_str(&format!("    {}\n", cx.describe()));
            }
            out.push_str(&format!("  corrected: {}\n", e.corrected_statement));
            out.push_str(&format!(
                "  corrected form {} over n = {}{} ({} instances)\n",
                e.corrected.status,
                e.corrected.n_range.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
                e.corrected.r_range.map(|r| format!(", r = {r}")).unwrap_or_default(),
                e.corrected.checked_count,
            ));
        }
        out
    }
}

/// Ranges used by [`errata_report`]: first-order pairs sweep `1..200`, the
/// order-`r` pair sweeps `n = 1..151`, `r = 1..10`.
pub const ERRATA_FIRST_ORDER_N: Interval = Interval::new(1, 200);
pub const ERRATA_ORDER_R_N: Interval = Interval::new(1, 151);
pub const ERRATA_ORDER_R_R: Interval = Interval::new(1, 10);

pub fn errata_report(opts: SweepOptions) -> ErrataReport {
    errata_report_over(ERRATA_FIRST_ORDER_N, ERRATA_ORDER_R_N, ERRATA_ORDER_R_R, opts)
}

pub fn errata_report_over(first_order_n: Interval, order_r_n: Interval, r: Interval, opts: SweepOptions) -> ErrataReport {
    let pairs = [
        ("Corollary 2", "cor2.printed", "cor2.corrected", first_order_n, None),
        ("Corollary 3", "cor3.printed", "cor3.corrected", first_order_n, None),
        ("Corollary 4", "cor4.printed", "cor4.corrected", order_r_n, Some(r)),
    ];
    let entries = pairs
        .par_iter()
        .map(|&(source, printed_id, corrected_id, n, r)| {
            let pd = lookup(printed_id).expect("catalogued");
            let cd = lookup(corrected_id).expect("catalogued");
            let printed = sweep(pd, n, r, opts);
            let corrected = sweep(cd, n, r, SweepOptions::default());
            ErrataEntry {
                source,
                printed_id,
                corrected_id,
                printed_statement: pd.statement,
                corrected_statement: cd.statement,
                counterexample: printed.counterexample.clone(),
                printed,
                corrected,
            }
        })
        .collect();
    ErrataReport { entries }
}

/// Human-readable table, one row per report.
pub fn format_table(reports: &[VerifyReport]) -> String {
    let mut rows = vec![[
        "id".to_string(),
        "status".to_string(),
        "expected".to_string(),
        "checked".to_string(),
        "n".to_string(),
        "r".to_string(),
        "ms".to_string(),
        "first counterexample".to_string(),
    ]];
    for rep in reports {
        rows.push([
            rep.id.clone(),
            rep.status.to_string(),
            if rep.expected_fail { "fail" } else { "pass" }.to_string(),
            rep.checked_count.to_string(),
            rep.n_range.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
            rep.r_range.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
            format!("{:.1}", rep.elapsed.as_secs_f64() * 1e3),
            rep.counterexample.as_ref().map(Counterexample::describe).unwrap_or_default(),
        ]);
    }
    let widths: Vec<usize> = (0..7).map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c < 7 {
                line.push_str(&format!("{:<w$}  ", cell, w = widths[c]));
            } else {
                line.push_str(cell);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
