//! Registry of identities, their right-hand sides and residual checks.

mod cot;
mod grid;
mod params;
mod rhs;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

pub use cot::{cot_deriv_combo, cot_deriv_combo_angle, cot_polynomials, MAX_COT_ORDER};
pub use grid::{default_grid, grid, GridAxes};
pub use params::{ExactComplex, Params};
pub use rhs::*;
pub use verify::{
    bhalf_limit_lhs, validate_params, verify, verify_with_tolerance, IdentityReport, ResidualMode,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    Thm21,
    Prop22,
    Cor23,
    Cor24,
    Cor25,
    Cor25Q1,
    Cor25Q2,
    Thm26,
    Thm41,
    Thm41Bhalf,
    Thm51,
    Thm52,
    Cor53,
    Cor54,
    EqCase1,
    EqCase2,
    EqCase2_1,
    EqCase2_2,
    DilogA,
    DilogB,
    Li21X,
    Zeta3Apery,
    ParamCbX1,
    Li2Half,
}

/// Registry rows: id, name, source anchor, description.
const REGISTRY: [(IdentityId, &str, &str, &str); 24] = [
    (
        IdentityId::Thm21,
        "THM21",
        "Theorem 2.1, Eq. (equ-thm-CPAS): \"cyclotomic Hurwitz zeta function\"",
        "bilateral cyclotomic series = convolution of Hurwitz values + central binomial coupling",
    ),
    (
        IdentityId::Prop22,
        "PROP22",
        "Proposition 2.2, Eq. (equ-thm-CAS): \"denotes the sequence of $1$ repeated\"",
        "sum binom(2n,n) x^n/(n^{p+1} 4^n) as multiple polylogarithms",
    ),
    (
        IdentityId::Cor23,
        "COR23",
        "Corollary 2.3, Eq. (equ-cor-case-CPAS-one): \"Substituting $q=1$ and $2$\"",
        "q = 1 bilateral series over sqrt(1 - x)",
    ),
    (
        IdentityId::Cor24,
        "COR24",
        "Corollary 2.4, Eq. (equ-cor-case-CPAS)",
        "q = 2 bilateral series with log(1 + sqrt(1 - x))",
    ),
    (
        IdentityId::Cor25,
        "COR25",
        "Corollary 2.5, Eq. (equ-cor-CPAS-casea): \"taking the limit as $a\\rightarrow 1/2$\"",
        "sum n binom(2n,n) x^{1-n}/((n-1/2)^q 4^n)",
    ),
    (
        IdentityId::Cor25Q1,
        "COR25_Q1",
        "Corollary 2.5 display, \"setting $q=1,2$ in\" (q = 1)",
        "half-integer series, q = 1 closed form",
    ),
    (
        IdentityId::Cor25Q2,
        "COR25_Q2",
        "Corollary 2.5 display, \"setting $q=1,2$ in\" (q = 2)",
        "half-integer series, q = 2 closed form",
    ),
    (
        IdentityId::Thm26,
        "THM26",
        "Theorem 2.6, Eq. (equ-thm-main-two): \"Let $x=e^{i\\theta}$ and\"",
        "Hurwitz pair Li_{m+1}(x;1-a) - (-1)^m x Li_{m+1}(1/x;a) as a-derivatives of (i - cot pi a) x^a",
    ),
    (
        IdentityId::Thm41,
        "THM41",
        "Theorem 4.1, Eq. (equ-general-thm-CPAS): \"digamma function and its higher derivatives\"",
        "shifted bilateral series with digamma Bell constants",
    ),
    (
        IdentityId::Thm41Bhalf,
        "THM41_BHALF",
        "Section 4 display: \"noting that $\\lim_{x\\rightarrow -1}D_0(x)=0$\"",
        "q = 1 shifted series in the limit b -> a + 1/2",
    ),
    (
        IdentityId::Thm51,
        "THM51",
        "Theorem 5.1, Eq. (FSN3): \"For positive integers $m$ and $p$\"",
        "sum binom(mn,n) x^n/n^{p+1} at u = 1 - 1/G_m(x)",
    ),
    (
        IdentityId::Thm52,
        "THM52",
        "Theorem 5.2, Eq. (AFSN3): \"For positive integers $m>1$ and $p$\"",
        "sum binom(mn,n) (-x)^n/n^{p+1} at u = 1 - G_m(-x)",
    ),
    (
        IdentityId::Cor53,
        "COR53",
        "Corollary 5.3, Eq. (equ-cor-sec4-one)",
        "p = 1 Fuss-Catalan dilogarithm form",
    ),
    (
        IdentityId::Cor54,
        "COR54",
        "Corollary 5.4, Eq. (equ-cor-anotherexa)",
        "sum binom(2n,n) (-x)^n/(n^{p+1} 4^n) at (sqrt(1+x)-1)/(sqrt(1+x)+1)",
    ),
    (
        IdentityId::EqCase1,
        "EQ_CASE1",
        "Eq. (case-equ-apery-1): \"Setting $p=1$ and $2$\"",
        "sum binom(2n,n) x^n/(n^2 4^n)",
    ),
    (
        IdentityId::EqCase2,
        "EQ_CASE2",
        "Eq. (case-equ-apery-2): \"Setting $p=1$ and $2$\"",
        "sum binom(2n,n) x^n/(n^3 4^n)",
    ),
    (
        IdentityId::EqCase2_1,
        "EQ_CASE2_1",
        "Eq. (case2-equ-apery-1)",
        "sum binom(2n,n) (-x)^n/(n^2 4^n)",
    ),
    (
        IdentityId::EqCase2_2,
        "EQ_CASE2_2",
        "Eq. (case2-equ-apery-2)",
        "sum binom(2n,n) (-x)^n/(n^3 4^n)",
    ),
    (
        IdentityId::DilogA,
        "DILOG_A",
        "Eq. (cor-one-case-1): \"setting $m=1$ yields the following known result\"",
        "2 Li_2(-x) + 2 Li_2(x/(1+x)) + log^2(1+x) = 0",
    ),
    (
        IdentityId::DilogB,
        "DILOG_B",
        "Eq. (case-speci-x): \"must be essentially equal\"",
        "dilogarithm relation between (1 - sqrt(1-x))/2 and (sqrt(1-x)-1)/(sqrt(1-x)+1)",
    ),
    (
        IdentityId::Li21X,
        "LI21_X",
        "Display after Eq. (case-speci-x): Li_{2,1} relation",
        "Li_{2,1} relation between (1 - sqrt(1-x))/2 and (sqrt(1-x)-1)/(sqrt(1-x)+1)",
    ),
    (
        IdentityId::Zeta3Apery,
        "ZETA3_APERY",
        "Section 1: \"proved the irrationality of $\\zeta(3)$\"",
        "sum (-1)^{n+1}/(n^3 binom(2n,n)) = 2 zeta(3)/5",
    ),
    (
        IdentityId::ParamCbX1,
        "PARAM_CB_X1",
        "Question 2 display: \"the result for $x=1$ can be derived\"",
        "sum binom(2n,n)/((n+a) 4^n) = Gamma(a)^2 4^a/(2 Gamma(2a))",
    ),
    (
        IdentityId::Li2Half,
        "LI2_HALF",
        "Section 5: \"setting $x=1$ in \\eqref{case-speci-x} yields\"",
        "Li_2(1/2) = pi^2/12 - log^2(2)/2",
    ),
];

/// How fast the left-hand side converges, which sets the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ToleranceClass {
    /// Absolutely convergent or closed form: `10^{-(D-10)}`.
    Absolute,
    /// Conditionally convergent `q = 1` sums: `10^{-D/2}`.
    Conditional,
}

impl ToleranceClass {
    pub fn tolerance(self, digits: u32) -> f64 {
        let exponent = match self {
            ToleranceClass::Absolute => digits.saturating_sub(10),
            ToleranceClass::Conditional => digits / 2,
        };
        // parsed rather than powi'd so that the value is the nearest double
        format!("1e-{exponent}").parse().expect("decimal power")
    }

    pub fn name(self) -> &'static str {
        match self {
            ToleranceClass::Absolute => "absolute",
            ToleranceClass::Conditional => "conditional",
        }
    }
}

impl IdentityId {
    pub const ALL: [IdentityId; 24] = {
        let mut out = [IdentityId::Thm21; 24];
        let mut i = 0;
        while i < 24 {
            out[i] = REGISTRY[i].0;
            i += 1;
        }
        out
    };

    fn row(self) -> &'static (IdentityId, &'static str, &'static str, &'static str) {
        &REGISTRY[self as usize]
    }

    pub fn name(self) -> &'static str {
        self.row().1
    }

    /// Where the identity is stated in the source text.
    pub fn anchor(self) -> &'static str {
        self.row().2
    }

    pub fn description(self) -> &'static str {
        self.row().3
    }

    pub fn class(self, params: &Params) -> ToleranceClass {
        use IdentityId::*;
        match self {
            Cor23 | Cor25Q1 | Thm41Bhalf => ToleranceClass::Conditional,
            Thm21 | Cor25 | Thm41 if params.q == Some(1) => ToleranceClass::Conditional,
            _ => ToleranceClass::Absolute,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        REGISTRY
            .iter()
            .find(|row| row.1.eq_ignore_ascii_case(s))
            .map(|row| row.0)
            .ok_or_else(|| Error::InvalidInput(format!("unknown identity {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_consistent() {
        for (i, id) in IdentityId::ALL.iter().enumerate() {
            assert_eq!(*id as usize, i);
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), *id);
            assert!(!id.anchor().is_empty());
        }
        assert!(IdentityId::Thm26
            .anchor()
            .contains("Let $x=e^{i\\theta}$ and"));
        assert!(IdentityId::Cor53.anchor().contains("equ-cor-sec4-one"));
        assert!("NOPE".parse::<IdentityId>().is_err());
    }

    #[test]
    fn tolerance_classes() {
        let q1 = Params {
            q: Some(1),
            ..Default::default()
        };
        let q2 = Params {
            q: Some(2),
            ..Default::default()
        };
        assert_eq!(IdentityId::Thm21.class(&q1), ToleranceClass::Conditional);
        assert_eq!(IdentityId::Thm21.class(&q2), ToleranceClass::Absolute);
        assert_eq!(ToleranceClass::Absolute.tolerance(50), 1e-40);
        assert_eq!(ToleranceClass::Conditional.tolerance(50), 1e-25);
    }
}
