//! Default parameter grids and per-axis overrides.

use rug::Rational;

use super::params::{ExactComplex, Params};
use super::IdentityId;
use crate::apery::fc_radius;
use crate::numerics::RootOfUnity;

/// Replacement values for individual grid axes. `None` keeps the default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridAxes {
    pub q: Option<Vec<u32>>,
    pub p: Option<Vec<u32>>,
    pub m: Option<Vec<u32>>,
    pub a: Option<Vec<ExactComplex>>,
    /// Absolute values of `b`; the default axis is the offset `b - a`.
    pub b: Option<Vec<ExactComplex>>,
    pub x: Option<Vec<RootOfUnity>>,
    pub z: Option<Vec<ExactComplex>>,
}

fn ec(s: &str) -> ExactComplex {
    s.parse().expect("built-in grid value")
}

fn ecs(list: &[&str]) -> Vec<ExactComplex> {
    list.iter().map(|s| ec(s)).collect()
}

fn roots(list: &[(i64, u64)]) -> Vec<RootOfUnity> {
    list.iter()
        .map(|&(p, n)| RootOfUnity::new(p, n).expect("built-in root of unity"))
        .collect()
}

const CPAS_A: [&str; 4] = ["1/3", "1/4", "2/7", "3/10+1/5i"];
const CPAS_X: [(i64, u64); 5] = [(1, 2), (1, 4), (1, 3), (1, 5), (3, 7)];
const DISK_Z: [&str; 5] = ["1", "-1", "1/2", "-1/2", "i"];
const FUSS_T: [&str; 7] = ["-3/4", "-1/2", "-1/4", "1/4", "1/2", "3/4", "9/10"];
const FUSS_M1_Z: [&str; 7] = ["-2/5", "-1/4", "-1/10", "1/10", "1/4", "1/2", "3/4"];

/// Seven real points `t R_m` inside the radius of `G_m`; for the reflected
/// identities at `m = 1`, points of `(-1/2, 1)`.
fn fuss_points(m: u32, reflected: bool) -> Vec<ExactComplex> {
    if m == 1 && reflected {
        return ecs(&FUSS_M1_Z);
    }
    let r = fc_radius(m);
    FUSS_T
        .iter()
        .map(|t| ExactComplex::real(Rational::from(&ec(t).re * &r)))
        .collect()
}

struct Axes {
    q: Vec<u32>,
    p: Vec<u32>,
    m: Vec<u32>,
    a: Vec<ExactComplex>,
    b_offsets: Vec<ExactComplex>,
    x: Vec<RootOfUnity>,
    z: Vec<ExactComplex>,
}

fn product(id: IdentityId, axes: &Axes, overrides: &GridAxes, uses: &str) -> Vec<Params> {
    let pick = |name: char| uses.contains(name);
    let q = overrides.q.clone().unwrap_or_else(|| axes.q.clone());
    let p = overrides.p.clone().unwrap_or_else(|| axes.p.clone());
    let m = overrides.m.clone().unwrap_or_else(|| axes.m.clone());
    let a = overrides.a.clone().unwrap_or_else(|| axes.a.clone());
    let x = overrides.x.clone().unwrap_or_else(|| axes.x.clone());
    let reflected = matches!(id, IdentityId::Thm52 | IdentityId::Cor53);

    let opt = |on: bool, v: Vec<u32>| {
        if on {
            v.into_iter().map(Some).collect()
        } else {
            vec![None]
        }
    };
    let mut out = Vec::new();
    for q in opt(pick('q'), q) {
        for p in opt(pick('p'), p.clone()) {
            for m in opt(pick('m'), m.clone()) {
                let zs: Vec<Option<ExactComplex>> = if !pick('z') {
                    vec![None]
                } else if let Some(z) = &overrides.z {
                    z.iter().cloned().map(Some).collect()
                } else if pick('m') {
                    fuss_points(m.expect("m axis"), reflected)
                        .into_iter()
                        .map(Some)
                        .collect()
                } else {
                    axes.z.iter().cloned().map(Some).collect()
                };
                let a_vals: Vec<Option<ExactComplex>> = if pick('a') {
                    a.iter().cloned().map(Some).collect()
                } else {
                    vec![None]
                };
                for a in &a_vals {
                    let b_vals: Vec<Option<ExactComplex>> = if !pick('b') {
                        vec![None]
                    } else if let Some(b) = &overrides.b {
                        b.iter().cloned().map(Some).collect()
                    } else {
                        let a = a.as_ref().expect("a axis");
                        axes.b_offsets.iter().map(|d| Some(a + d)).collect()
                    };
                    for b in &b_vals {
                        let x_vals: Vec<Option<RootOfUnity>> = if pick('x') {
                            x.iter().copied().map(Some).collect()
                        } else {
                            vec![None]
                        };
                        for xv in &x_vals {
                            for z in &zs {
                                out.push(Params {
                                    q,
                                    p,
                                    m,
                                    a: a.clone(),
                                    b: b.clone(),
                                    x: *xv,
                                    z: z.clone(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// The parameter points of `id` with the given axes replaced.
pub fn grid(id: IdentityId, overrides: &GridAxes) -> Vec<Params> {
    use IdentityId::*;
    let mut axes = Axes {
        q: vec![],
        p: vec![],
        m: vec![],
        a: ecs(&CPAS_A),
        b_offsets: vec![],
        x: roots(&CPAS_X),
        z: ecs(&DISK_Z),
    };
    let uses = match id {
        Thm21 => {
            axes.q = vec![2, 3, 4];
            "qax"
        }
        Prop22 | Cor54 => {
            axes.p = vec![1, 2, 3];
            if id == Cor54 {
                axes.z = ecs(&["-3/4", "-1/2", "-1/4", "1/4", "1/2", "3/4", "1"]);
            }
            "pz"
        }
        Cor23 => "ax",
        Cor24 => {
            axes.x.insert(0, RootOfUnity::one());
            "ax"
        }
        Cor25 => {
            axes.q = vec![1, 2, 3, 4];
            "qx"
        }
        Cor25Q1 | Cor25Q2 => "x",
        Thm26 => {
            axes.m = vec![0, 1, 2, 3, 4];
            axes.a = ecs(&["1/4", "1/3", "2/7", "3/10+1/5i", "1/5+1/10i"]);
            axes.x = roots(&[(1, 6), (2, 5), (1, 2), (1, 4), (3, 7)]);
            // m is the derivative order here
            "max"
        }
        Thm41 => {
            axes.q = vec![1, 2, 3];
            axes.b_offsets = ecs(&["1/7", "1/3"]);
            "qabx"
        }
        Thm41Bhalf => {
            axes.a.push(ec("1/5"));
            "ax"
        }
        Thm51 | Thm52 => {
            axes.m = vec![1, 2, 3, 4];
            axes.p = vec![1, 2, 3];
            "mpz"
        }
        Cor53 => {
            axes.m = vec![1, 2, 3, 4];
            "mz"
        }
        EqCase1 | EqCase2 | EqCase2_1 | EqCase2_2 => "z",
        DilogA => {
            axes.z = ecs(&["-2/5", "-1/4", "-1/10", "1/10", "3/10", "1/2", "3/4"]);
            "z"
        }
        DilogB => {
            axes.z = ecs(&["1", "1/2", "1/4", "3/4", "-1/2", "-1", "i"]);
            "z"
        }
        Li21X => {
            axes.z = ecs(&["1/4", "1/2", "3/4", "-1/2"]);
            "z"
        }
        ParamCbX1 => {
            axes.a = ecs(&["1/2", "1/3", "1", "5/4"]);
            "a"
        }
        Zeta3Apery | Li2Half => "",
    };
    product(id, &axes, overrides, uses)
}

pub fn default_grid(id: IdentityId) -> Vec<Params> {
    grid(id, &GridAxes::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sizes() {
        use IdentityId::*;
        let expected = [
            (Thm21, 60),
            (Prop22, 15),
            (Cor23, 20),
            (Cor24, 24),
            (Cor25, 20),
            (Cor25Q1, 5),
            (Cor25Q2, 5),
            (Thm26, 125),
            (Thm41, 120),
            (Thm41Bhalf, 25),
            (Thm51, 84),
            (Thm52, 84),
            (Cor53, 28),
            (Cor54, 21),
            (EqCase1, 5),
            (DilogA, 7),
            (DilogB, 7),
            (Li21X, 4),
            (ParamCbX1, 4),
            (Zeta3Apery, 1),
            (Li2Half, 1),
        ];
        for (id, n) in expected {
            assert_eq!(default_grid(id).len(), n, "{id}");
        }
    }

    #[test]
    fn overrides_replace_axes() {
        let g = grid(
            IdentityId::Thm21,
            &GridAxes {
                q: Some(vec![2]),
                x: Some(vec![RootOfUnity::minus_one()]),
                ..Default::default()
            },
        );
        assert_eq!(g.len(), 4);
        // unused axes are ignored
        let g = grid(
            IdentityId::Zeta3Apery,
            &GridAxes {
                q: Some(vec![5]),
                ..Default::default()
            },
        );
        assert_eq!(g, vec![Params::default()]);
        let g = grid(
            IdentityId::Thm41,
            &GridAxes {
                b: Some(vec![ec("1/2")]),
                ..Default::default()
            },
        );
        assert!(g.iter().all(|p| p.b == Some(ec("1/2"))));
    }

    #[test]
    fn fuss_points_inside_radius() {
        for m in 2..=4 {
            let r = fc_radius(m);
            for z in fuss_points(m, false) {
                assert!(Rational::from(z.re.abs_ref()) < r);
            }
        }
    }
}
