use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{Cx, RootOfUnity};

/// A complex number with exact rational parts, used for grid parameters so
/// that a point means the same thing at every precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn real(re: impl Into<Rational>) -> Self {
        ExactComplex {
            re: re.into(),
            im: Rational::new(),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(Rational::from((num, den)))
    }

    pub fn new(re: impl Into<Rational>, im: impl Into<Rational>) -> Self {
        ExactComplex {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im == 0
    }

    pub fn to_cx(&self, bits: u32) -> Cx {
        Cx::from_rational(bits, &self.re, &self.im)
    }
}

impl std::ops::Add for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: Rational::from(&self.re + &rhs.re),
            im: Rational::from(&self.im + &rhs.im),
        }
    }
}

impl std::ops::Sub for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: &ExactComplex) -> ExactComplex {
        ExactComplex {
            re: Rational::from(&self.re - &rhs.re),
            im: Rational::from(&self.im - &rhs.im),
        }
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0 {
            return write!(f, "{}", self.re);
        }
        let im = if self.im == 1 {
            String::new()
        } else if self.im == -1 {
            "-".to_string()
        } else {
            self.im.to_string()
        };
        if self.re == 0 {
            write!(f, "{im}i")
        } else if self.im > 0 {
            write!(f, "{}+{im}i", self.re)
        } else {
            write!(f, "{}{im}i", self.re)
        }
    }
}

/// Parses `"3"`, `"-2/7"` or `"0.25"` as an exact rational.
fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(format!("cannot parse {s:?} as a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: Integer = num.parse().map_err(|_| bad())?;
        let den: Integer = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::from((num, den)));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: Integer = format!("{int}{frac}")
        .trim_start_matches('0')
        .parse()
        .unwrap_or_default();
    let scale = Integer::from(10).pow(frac.len() as u32);
    let r = Rational::from((digits, scale));
    Ok(if neg { -r } else { r })
}

impl FromStr for ExactComplex {
    type Err = Error;

    /// Accepts `"1/3"`, `"0.3+0.2i"`, `"1/5-1/10i"`, `"i"`, `"-2i"`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix('i') else {
            return Ok(ExactComplex::real(parse_rational(&s)?));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, im) = match split {
            Some(i) => (parse_rational(&body[..i])?, &body[i..]),
            None => (Rational::new(), body),
        };
        let im = match im {
            "" | "+" => Rational::from(1),
            "-" => Rational::from(-1),
            t => parse_rational(t)?,
        };
        Ok(ExactComplex { re, im })
    }
}

/// One parameter point of an identity. Fields an identity does not use stay
/// `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Params {
    pub q: Option<u32>,
    pub p: Option<u32>,
    pub m: Option<u32>,
    pub a: Option<ExactComplex>,
    pub b: Option<ExactComplex>,
    /// Root of unity argument.
    pub x: Option<RootOfUnity>,
    /// Argument inside the closed unit disk, or the Fuss–Catalan argument.
    pub z: Option<ExactComplex>,
}

impl Params {
    pub fn q(&self) -> Result<u32> {
        self.q.ok_or_else(|| missing("q"))
    }

    pub fn p(&self) -> Result<u32> {
        self.p.ok_or_else(|| missing("p"))
    }

    pub fn m(&self) -> Result<u32> {
        self.m.ok_or_else(|| missing("m"))
    }

    pub fn a(&self) -> Result<&ExactComplex> {
        self.a.as_ref().ok_or_else(|| missing("a"))
    }

    pub fn b(&self) -> Result<&ExactComplex> {
        self.b.as_ref().ok_or_else(|| missing("b"))
    }

    pub fn x(&self) -> Result<RootOfUnity> {
        self.x.ok_or_else(|| missing("x"))
    }

    pub fn z(&self) -> Result<&ExactComplex> {
        self.z.as_ref().ok_or_else(|| missing("z"))
    }

    /// `(name, value)` pairs of the fields that are set, in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        if let Some(v) = self.q {
            out.push(("q", v.to_string()));
        }
        if let Some(v) = self.p {
            out.push(("p", v.to_string()));
        }
        if let Some(v) = self.m {
            out.push(("m", v.to_string()));
        }
        if let Some(v) = &self.a {
            out.push(("a", v.to_string()));
        }
        if let Some(v) = &self.b {
            out.push(("b", v.to_string()));
        }
        if let Some(v) = self.x {
            out.push(("x", v.to_string()));
        }
        if let Some(v) = &self.z {
            out.push(("z", v.to_string()));
        }
        out
    }

    fn sort_key(&self) -> impl Ord + '_ {
        let angle = self.x.map(|x| Rational::from((x.numer(), x.order())));
        (
            self.q,
            self.p,
            self.m,
            self.a.as_ref(),
            self.b.as_ref(),
            angle,
            self.z.as_ref(),
        )
    }
}

fn missing(name: &str) -> Error {
    Error::InvalidInput(format!("parameter {name} is required"))
}

impl PartialOrd for Params {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Params {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}
