//! Partial derivatives of `F_n(x, y)` by several independent constructions.
//!
//! Each builder keeps its natural index convention: some return the
//! derivative of `F_n`, others that of `F_{n+1}`. The doc comment of every
//! builder states which. [`derivative`] normalizes all of them to
//! `d^r F_n / d(x|y)^r`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::LaurentBiPoly;
use crate::sequences::{binomial, fib, fib_ref};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Wrt {
    X,
    Y,
}

impl FromStr for Wrt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Wrt::X),
            "y" => Ok(Wrt::Y),
            other => Err(Error::parse(format!("expected x or y, got `{other}`"))),
        }
    }
}

impl fmt::Display for Wrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Wrt::X => "x",
            Wrt::Y => "y",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivMethod {
    /// Repeated term-wise differentiation of the recurrence output.
    Direct,
    /// Binomial closed-form sums.
    ClosedForm,
    /// Sums of products `F_i F_{n-i}`.
    Convolution,
    /// Alternating sums `(-1)^i (n-2i) F_{n-2i} y^i`.
    AltSum,
    /// Rational form divided exactly by `x^2 + 4y`.
    Rational,
    /// Order-`r` recurrence table.
    RthRecurrence,
}

impl DerivMethod {
    pub const ALL: [DerivMethod; 6] = [
        DerivMethod::Direct,
        DerivMethod::ClosedForm,
        DerivMethod::Convolution,
        DerivMethod::AltSum,
        DerivMethod::Rational,
        DerivMethod::RthRecurrence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DerivMethod::Direct => "direct",
            DerivMethod::ClosedForm => "closed",
            DerivMethod::Convolution => "conv",
            DerivMethod::AltSum => "altsum",
            DerivMethod::Rational => "rational",
            DerivMethod::RthRecurrence => "recurrence",
        }
    }
}

impl fmt::Display for DerivMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DerivMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DerivMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown derivative method `{s}`")))
    }
}

/// One instance of an identity: `lhs` is the left side as stated (usually
/// the derivative being expressed), `rhs` the constructed right side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub lhs: LaurentBiPoly,
    pub rhs: LaurentBiPoly,
}

impl Claim {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// `rhs - lhs`.
    pub fn difference(&self) -> LaurentBiPoly {
        self.rhs.sub(&self.lhs)
    }
}

fn require(n: i64, ok: bool, domain: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfDomain { n, domain })
    }
}

fn x2_plus_4y() -> LaurentBiPoly {
    LaurentBiPoly::monomial(2, 0, 1).add(&LaurentBiPoly::monomial(0, 1, 4))
}

/// `d^r F_n / dx^r` by repeated differentiation. This is the reference
/// every other builder is compared against.
pub fn d_dx_direct(n: i64, r: u32) -> LaurentBiPoly {
    fib_ref(n).diff_x_n(r)
}

pub fn d_dy_direct(n: i64, r: u32) -> LaurentBiPoly {
    fib_ref(n).diff_y_n(r)
}

/// `dF_n/dx` from `sum C(m-i, i) (m-2i) x^{m-1-2i} y^i` with `m = n - 1`.
pub fn d_dx_closed(n: i64) -> Result<LaurentBiPoly> {
    require(n, n >= 1, "n >= 1")?;
    Ok(closed_dx(n as u32 - 1, true))
}

/// `dF_n/dy` from `sum C(m-i, i) i x^{m-2i} y^{i-1}` with `m = n - 1`.
///
/// The sum runs to `floor(m/2)`; stopping at `floor((m-1)/2)` would lose
/// the pure power `y^{m/2 - 1}` whenever `m` is even.
pub fn d_dy_closed(n: i64) -> Result<LaurentBiPoly> {
    require(n, n >= 1, "n >= 1")?;
    let m = n as u32 - 1;
    Ok(LaurentBiPoly::from_terms((1..=m / 2).map(|i| crate::poly::Term {
        ex: m - 2 * i,
        ey: i as i32 - 1,
        coeff: binomial(u64::from(m - i), u64::from(i)) * i,
    })))
}

/// Derivative of the univariate `F_n(x)`.
pub fn d_dx_univariate_closed(n: i64) -> Result<LaurentBiPoly> {
    require(n, n >= 1, "n >= 1")?;
    Ok(closed_dx(n as u32 - 1, false))
}

fn closed_dx(m: u32, bivariate: bool) -> LaurentBiPoly {
    if m == 0 {
        return LaurentBiPoly::zero();
    }
    LaurentBiPoly::from_terms((0..=(m - 1) / 2).map(|i| crate::poly::Term {
        ex: m - 1 - 2 * i,
        ey: if bivariate { i as i32 } else { 0 },
        coeff: binomial(u64::from(m - i), u64::from(i)) * (m - 2 * i),
    }))
}

/// `dF_n/dx = sum_{i=1}^{n-1} F_i F_{n-i}`; the empty sum at `n = 1` is 0.
pub fn conv_dx(n: i64) -> Result<LaurentBiPoly> {
    require(n, n >= 1, "n >= 1")?;
    Ok(convolution(n))
}

/// `dF_n/dy = sum_{i=1}^{n-2} F_i F_{n-1-i}`.
pub fn conv_dy(n: i64) -> Result<LaurentBiPoly> {
    require(n, n >= 1, "n >= 1")?;
    Ok(convolution(n - 1))
}

/// `sum_{i=1}^{total-1} F_i F_{total-i}`. The index set is symmetric under
/// `i -> total - i`, so each unordered pair is multiplied once.
fn convolution(total: i64) -> LaurentBiPoly {
    let mut acc = LaurentBiPoly::zero();
    let mut i = 1;
    while 2 * i <= total {
        let prod = fib_ref(i).mul(&fib_ref(total - i));
        acc = if 2 * i == total { acc.add(&prod) } else { acc.add(&prod.scale(2)) };
        i += 1;
    }
    acc
}

/// `dF_{n+1}/dx = sum_{i=0}^{floor((n-1)/2)} (-1)^i (n-2i) F_{n-2i} y^i`.
/// Note the index: this returns the derivative of `F_{n+1}`.
pub fn altsum_dx(n: i64) -> Result<LaurentBiPoly> {
    require(n, n >= 0, "n >= 0")?;
    Ok(alternating(n, true))
}

/// `dF_n/dy = sum_{i=0}^{floor((n-3)/2)} (-1)^i (n-2-2i) F_{n-2-2i} y^i`.
///
/// With `corrected = false` the sign factor is dropped, reproducing the
/// printed corollary, which is wrong from `n = 5` on.
pub fn altsum_dy(n: i64, corrected: bool) -> Result<LaurentBiPoly> {
    require(n, n >= 1, "n >= 1")?;
    Ok(alternating(n - 2, corrected))
}

fn alternating(n: i64, signed: bool) -> LaurentBiPoly {
    let mut acc = LaurentBiPoly::zero();
    let mut i: i64 = 0;
    while n - 2 * i >= 1 {
        let k = n - 2 * i;
        let sign = if signed && i % 2 == 1 { -1 } else { 1 };
        acc = acc.add(&fib_ref(k).scale(sign * k).shift(0, i as i32));
        i += 1;
    }
    acc
}

/// `(n+1) F_{n+1} + (n-1) y F_{n-1} - 2x F_n`.
pub fn rational_numerator(n: i64) -> LaurentBiPoly {
    fib_ref(n + 1)
        .scale(n + 1)
        .add(&fib_ref(n - 1).scale(n - 1).shift(0, 1))
        .sub(&fib_ref(n).scale(2).shift(1, 0))
}

/// `dF_n/dx` as the numerator above divided exactly by `x^2 + 4y`.
pub fn rational_dx(n: i64) -> Result<LaurentBiPoly> {
    require(n, n >= 1, "n >= 1")?;
    rational_numerator(n).div_exact(&x2_plus_4y())
}

/// The right side `[n F_n + (n-2) y F_{n-2} - 2x F_{n-1}] / (x^2 + 4y)`
/// paired with its claimed left side: `dF_{n-1}/dx` when `corrected`,
/// the printed `dF_n/dx` otherwise.
pub fn rational_dx_shifted(n: i64, corrected: bool) -> Result<Claim> {
    require(n, n >= 2, "n > 1")?;
    let rhs = rational_numerator(n - 1).div_exact(&x2_plus_4y())?;
    let lhs = d_dx_direct(if corrected { n - 1 } else { n }, 1);
    Ok(Claim { lhs, rhs })
}

/// `F_n = (1/n) [dF_{n+1}/dx + y dF_{n-1}/dx]`, dividing by `n` exactly.
pub fn reconstruct_fib(n: i64) -> Result<LaurentBiPoly> {
    require(n, n >= 1, "n >= 1")?;
    d_dx_direct(n + 1, 1)
        .add(&d_dx_direct(n - 1, 1).shift(0, 1))
        .div_exact_scalar(n)
}

/// Row `r` holds `d^r F_{k+1} / dx^r` at position `k`.
#[derive(Default)]
struct RthTable {
    rows: Vec<Vec<Arc<LaurentBiPoly>>>,
}

fn rth_table() -> &'static RwLock<RthTable> {
    static TABLE: OnceLock<RwLock<RthTable>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

fn factorial(r: u32) -> BigInt {
    (1..=r).fold(BigInt::from(1u32), |acc, k| acc * k)
}

/// `d^r F_{n+1} / dx^r` from the order-`r` recurrence:
/// zero for `n < r`, the constant `r!` at `n = r`, and
/// `[n x D_{n-1} + (n+r) y D_{n-2}] / (n-r)` above, where `D_k` is the
/// value at index `k`. Each division by `n - r` must be exact.
pub fn rth_dx_recurrence(n: i64, r: u32) -> Result<LaurentBiPoly> {
    require(n, n >= 0, "n >= 0")?;
    if r == 0 {
        return Err(Error::UnsupportedMethod {
            method: DerivMethod::RthRecurrence.to_string(),
            what: "order 0".into(),
        });
    }
    let idx = n as usize;
    let row = r as usize - 1;
    {
        let table = rth_table().read().expect("derivative table poisoned");
        if let Some(v) = table.rows.get(row).and_then(|cells| cells.get(idx)) {
            return Ok((**v).clone());
        }
    }
    let mut table = rth_table().write().expect("derivative table poisoned");
    if table.rows.len() <= row {
        table.rows.resize_with(row + 1, Vec::new);
    }
    let cells = &mut table.rows[row];
    let rr = i64::from(r);
    while cells.len() <= idx {
        let k = cells.len() as i64;
        let value = if k < rr {
            LaurentBiPoly::zero()
        } else if k == rr {
            LaurentBiPoly::constant(factorial(r))
        } else {
            let prev = &cells[(k - 1) as usize];
            let prev2 = &cells[(k - 2) as usize];
            prev.scale(k)
                .shift(1, 0)
                .add(&prev2.scale(k + rr).shift(0, 1))
                .div_exact_scalar(k - rr)?
        };
        cells.push(Arc::new(value));
    }
    Ok((*cells[idx]).clone())
}

/// The order-`r` recurrence shifted down one index:
/// `[(n-1) x D_r F_{n-1} + (n-1+r) y D_r F_{n-2}] / (n-r-1)`, paired with
/// `d^r F_n / dx^r` when `corrected` and with the printed
/// `d^r F_{n+1} / dx^r` otherwise. Only the recurrence branch `n > r + 1`
/// is meaningful; `n = r + 1` makes the prefactor singular.
pub fn rth_dx_recurrence_shifted(n: i64, r: u32, corrected: bool) -> Result<Claim> {
    let rr = i64::from(r);
    if r == 0 {
        return Err(Error::UnsupportedMethod {
            method: DerivMethod::RthRecurrence.to_string(),
            what: "order 0".into(),
        });
    }
    if n == rr + 1 {
        return Err(Error::SingularPrefactor { n, r });
    }
    require(n, n > rr + 1, "n > r + 1")?;
    let rhs = d_dx_direct(n - 1, r)
        .scale(n - 1)
        .shift(1, 0)
        .add(&d_dx_direct(n - 2, r).scale(n - 1 + rr).shift(0, 1))
        .div_exact_scalar(n - rr - 1)?;
    let lhs = d_dx_direct(if corrected { n } else { n + 1 }, r);
    Ok(Claim { lhs, rhs })
}

/// `dL_n/dx`; equals `n F_n`.
pub fn lucas_dx(n: i64) -> LaurentBiPoly {
    crate::sequences::lucas_ref(n).diff_x()
}

/// `dF_n/dx` against `dF_{n+1}/dy`.
pub fn cross_derivative(n: i64) -> Claim {
    Claim {
        lhs: fib_ref(n).diff_x(),
        rhs: fib_ref(n + 1).diff_y(),
    }
}

/// `d^r F_n / d(wrt)^r` by the chosen method, all methods sharing this
/// indexing. First-order-only methods reject `r > 1`; `r = 0` is `F_n`.
pub fn derivative(n: i64, r: u32, wrt: Wrt, method: DerivMethod) -> Result<LaurentBiPoly> {
    if r == 0 {
        return Ok(fib(n));
    }
    let unsupported = |what: String| Error::UnsupportedMethod {
        method: method.to_string(),
        what,
    };
    if method != DerivMethod::Direct && method != DerivMethod::RthRecurrence && r != 1 {
        return Err(unsupported(format!("order {r}")));
    }
    match (method, wrt) {
        (DerivMethod::Direct, Wrt::X) => Ok(d_dx_direct(n, r)),
        (DerivMethod::Direct, Wrt::Y) => Ok(d_dy_direct(n, r)),
        (DerivMethod::ClosedForm, Wrt::X) => d_dx_closed(n),
        (DerivMethod::ClosedForm, Wrt::Y) => d_dy_closed(n),
        (DerivMethod::Convolution, Wrt::X) => conv_dx(n),
        (DerivMethod::Convolution, Wrt::Y) => conv_dy(n),
        (DerivMethod::AltSum, Wrt::X) => {
            require(n, n >= 1, "n >= 1")?;
            altsum_dx(n - 1)
        }
        (DerivMethod::AltSum, Wrt::Y) => altsum_dy(n, true),
        (DerivMethod::Rational, Wrt::X) => rational_dx(n),
        (DerivMethod::RthRecurrence, Wrt::X) => {
            require(n, n >= 1, "n >= 1")?;
            rth_dx_recurrence(n - 1, r)
        }
        (DerivMethod::Rational | DerivMethod::RthRecurrence, Wrt::Y) => {
            Err(unsupported("differentiation with respect to y".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(ex: u32, ey: i32, c: i64) -> LaurentBiPoly {
        LaurentBiPoly::monomial(ex, ey, c)
    }

    fn c(v: i64) -> LaurentBiPoly {
        LaurentBiPoly::constant(v)
    }

    #[test]
    fn direct() {
        assert_eq!(d_dx_direct(4, 1), m(2, 0, 3) + m(0, 1, 2));
        assert_eq!(d_dx_direct(7, 0), fib(7));
        assert!(d_dx_direct(3, 3).is_zero());
    }

    #[test]
    fn closed_form() {
        assert_eq!(d_dx_closed(5).unwrap(), m(3, 0, 4) + m(1, 1, 6));
        assert!(d_dx_closed(1).unwrap().is_zero());
        assert_eq!(d_dy_closed(5).unwrap(), m(2, 0, 3) + m(0, 1, 2));
        assert_eq!(d_dy_closed(3).unwrap(), c(1));
        assert!(matches!(d_dx_closed(0), Err(Error::OutOfDomain { .. })));
        assert_eq!(d_dx_univariate_closed(3).unwrap(), m(1, 0, 2));
        assert_eq!(d_dx_univariate_closed(4).unwrap(), m(2, 0, 3) + c(2));
        assert!(d_dx_univariate_closed(1).unwrap().is_zero());
    }

    #[test]
    fn convolutions() {
        assert_eq!(conv_dx(2).unwrap(), c(1));
        assert_eq!(conv_dx(4).unwrap(), m(2, 0, 3) + m(0, 1, 2));
        assert!(conv_dx(1).unwrap().is_zero());
        assert!(conv_dy(2).unwrap().is_zero());
        assert_eq!(conv_dy(5).unwrap(), m(2, 0, 3) + m(0, 1, 2));
        assert_eq!(conv_dy(3).unwrap(), c(1));
        for n in 1..30 {
            let naive = (1..n).fold(LaurentBiPoly::zero(), |acc, i| acc + fib(i) * fib(n - i));
            assert_eq!(conv_dx(n).unwrap(), naive, "n = {n}");
        }
    }

    #[test]
    fn alternating_sums() {
        assert_eq!(altsum_dx(1).unwrap(), c(1));
        assert_eq!(altsum_dx(2).unwrap(), m(1, 0, 2));
        assert_eq!(altsum_dx(4).unwrap(), m(3, 0, 4) + m(1, 1, 6));
        assert_eq!(altsum_dy(5, true).unwrap(), m(2, 0, 3) + m(0, 1, 2));
        assert_eq!(altsum_dy(5, false).unwrap(), m(2, 0, 3) + m(0, 1, 4));
        assert_eq!(altsum_dy(3, true).unwrap(), c(1));
    }

    #[test]
    fn rational_forms() {
        assert_eq!(rational_numerator(2), x2_plus_4y());
        assert_eq!(rational_dx(2).unwrap(), c(1));
        assert!(rational_numerator(1).is_zero());
        assert!(rational_dx(1).unwrap().is_zero());
        assert_eq!(rational_dx(5).unwrap(), m(3, 0, 4) + m(1, 1, 6));

        let ok = rational_dx_shifted(3, true).unwrap();
        assert!(ok.holds());
        assert_eq!(ok.rhs, c(1));
        let bad = rational_dx_shifted(3, false).unwrap();
        assert!(!bad.holds());
        assert_eq!(bad.lhs, m(1, 0, 2));
        assert_eq!(bad.rhs, c(1));
        assert_eq!(rational_dx_shifted(6, true).unwrap().rhs, d_dx_direct(5, 1));
    }

    #[test]
    fn reconstruction() {
        assert_eq!(reconstruct_fib(2).unwrap(), LaurentBiPoly::var_x());
        assert_eq!(reconstruct_fib(1).unwrap(), c(1));
        assert_eq!(reconstruct_fib(6).unwrap(), fib(6));
    }

    #[test]
    fn order_r_recurrence() {
        assert!(rth_dx_recurrence(1, 2).unwrap().is_zero());
        assert_eq!(rth_dx_recurrence(3, 3).unwrap(), c(6));
        assert_eq!(rth_dx_recurrence(2, 1).unwrap(), m(1, 0, 2));
        assert_eq!(rth_dx_recurrence(3, 1).unwrap(), m(2, 0, 3) + m(0, 1, 2));
        assert!(rth_dx_recurrence(-1, 1).is_err());
    }

    #[test]
    fn shifted_order_r_recurrence() {
        let ok = rth_dx_recurrence_shifted(4, 1, true).unwrap();
        assert!(ok.holds());
        assert_eq!(ok.rhs, m(2, 0, 3) + m(0, 1, 2));
        let bad = rth_dx_recurrence_shifted(3, 1, false).unwrap();
        assert_eq!(bad.rhs, m(1, 0, 2));
        assert_eq!(bad.lhs, m(2, 0, 3) + m(0, 1, 2));
        assert_eq!(
            rth_dx_recurrence_shifted(2, 1, true),
            Err(Error::SingularPrefactor { n: 2, r: 1 })
        );
        assert!(matches!(rth_dx_recurrence_shifted(1, 1, true), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn lucas_and_cross() {
        assert_eq!(lucas_dx(2), m(1, 0, 2));
        assert!(lucas_dx(0).is_zero());
        let cross = cross_derivative(3);
        assert!(cross.holds());
        assert_eq!(cross.lhs, m(1, 0, 2));
    }

    #[test]
    fn uniform_wrapper() {
        let expect = d_dx_direct(9, 1);
        for method in DerivMethod::ALL {
            assert_eq!(derivative(9, 1, Wrt::X, method).unwrap(), expect, "{method}");
        }
        let expect_y = d_dy_direct(9, 1);
        for method in [DerivMethod::Direct, DerivMethod::ClosedForm, DerivMethod::Convolution, DerivMethod::AltSum] {
            assert_eq!(derivative(9, 1, Wrt::Y, method).unwrap(), expect_y, "{method}");
        }
        assert_eq!(derivative(9, 3, Wrt::X, DerivMethod::RthRecurrence).unwrap(), d_dx_direct(9, 3));
        assert!(matches!(
            derivative(9, 2, Wrt::X, DerivMethod::Convolution),
            Err(Error::UnsupportedMethod { .. })
        ));
        assert!(derivative(9, 1, Wrt::Y, DerivMethod::Rational).is_err());
        assert_eq!(derivative(-4, 1, Wrt::Y, DerivMethod::Direct).unwrap(), fib(-4).diff_y());
        assert_eq!(derivative(4, 0, Wrt::X, DerivMethod::Rational).unwrap(), fib(4));
    }

    #[test]
    fn method_names_round_trip() {
        for method in DerivMethod::ALL {
            assert_eq!(method.name().parse::<DerivMethod>().unwrap(), method);
        }
        assert!("bogus".parse::<DerivMethod>().is_err());
    }
}
