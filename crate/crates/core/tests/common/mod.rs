//! Shared test support: a deterministic PRNG, brute-force oracles for
//! the congruence solvers, and the point-level pushforward oracle on
//! finite torsion models (Z/L)^2. Everything here is independent of the
//! library code paths it checks.

#![allow(dead_code)]

use ccc_core::lattice::Mat;
use ccc_core::Int;

/// xorshift64*, seeded; good enough for reproducible test data.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    /// Uniform-ish integer in [lo, hi].
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

pub fn int_mat(rows: &[&[i64]]) -> Mat<Int> {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect(),
    )
}

pub fn int_mat_from_vecs(rows: &[Vec<i64>]) -> Mat<Int> {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect(),
    )
}

pub fn int_vec(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| Int::from(x)).collect()
}

/// Lexicographically first solution of `a x = b (mod n)` by exhaustive
/// enumeration of [0, n)^cols; `None` when no solution exists.
pub fn brute_solve_mod(a: &[Vec<i64>], b: &[i64], n: i64) -> Option<Vec<i64>> {
    let cols = a.first().map_or(0, Vec::len);
    let rows = a.len();
    let mut x = vec![0i64; cols];
    loop {
        let ok = (0..rows).all(|i| {
            let lhs: i64 = (0..cols).map(|j| a[i][j] * x[j]).sum();
            (lhs - b[i]).rem_euclid(n) == 0
        });
        if ok {
            return Some(x);
        }
        let mut i = cols;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            x[i] += 1;
            if x[i] < n {
                break;
            }
            x[i] = 0;
        }
    }
}

/// Brute-force decision of the tensor congruence
/// gamma (x) target = sum_g gens[g] (x) x_g (mod m), straight from the
/// tensors: enumerates all assignments of the x_g in [0, m)^2.
pub fn brute_tensor_congruence(
    gamma: [i64; 2],
    target: [[i64; 2]; 2],
    gens: &[[[i64; 2]; 2]],
    m: i64,
) -> Option<Vec<i64>> {
    let cols = 2 * gens.len();
    let mut x = vec![0i64; cols];
    loop {
        let mut ok = true;
        'eqs: for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let lhs = gamma[i] * target[j][k];
                    let rhs: i64 = gens
                        .iter()
                        .enumerate()
                        .map(|(g, gen)| gen[i][j] * x[2 * g + k])
                        .sum();
                    if (lhs - rhs).rem_euclid(m) != 0 {
                        ok = false;
                        break 'eqs;
                    }
                }
            }
        }
        if ok {
            return Some(x);
        }
        let mut i = cols;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            x[i] += 1;
            if x[i] < m {
                break;
            }
            x[i] = 0;
        }
    }
}

/// Point-level model of product cycles on E1 x E2 x E3 with every curve
/// replaced by its L-torsion (Z/L)^2. A one-cycle is a weighted list of
/// parametrized cosets {(A1 s + b1, A2 s + b2, A3 s + b3) : s in G};
/// every generator below parametrizes its cosets injectively, so the
/// model is faithful for the invariants recovered in `recover`.
pub mod point_oracle {
    pub type M2 = [[i64; 2]; 2];
    pub type Pt = [i64; 2];

    pub const ZERO: M2 = [[0, 0], [0, 0]];
    pub const ID: M2 = [[1, 0], [0, 1]];

    pub fn det(m: M2) -> i64 {
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mat_add(a: M2, b: M2) -> M2 {
        [
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ]
    }

    pub fn mat_mod(a: M2, l: i64) -> M2 {
        a.map(|row| row.map(|x| x.rem_euclid(l)))
    }

    pub fn mat_vec(a: M2, v: Pt) -> Pt {
        [
            a[0][0] * v[0] + a[0][1] * v[1],
            a[1][0] * v[0] + a[1][1] * v[1],
        ]
    }

    fn pt_add(a: Pt, b: Pt) -> Pt {
        [a[0] + b[0], a[1] + b[1]]
    }

    fn pt_sub(a: Pt, b: Pt) -> Pt {
        [a[0] - b[0], a[1] - b[1]]
    }

    fn pt_mod(a: Pt, l: i64) -> Pt {
        a.map(|x| x.rem_euclid(l))
    }

    /// A weighted coset in the triple product.
    #[derive(Clone, Debug)]
    pub struct Coset3 {
        pub w: i64,
        pub a: [M2; 3],
        pub base: [Pt; 3],
    }

    /// A weighted coset in E1 x E2 after the pushforward.
    #[derive(Clone, Debug)]
    pub struct Coset2 {
        pub w: i64,
        pub a1: M2,
        pub a2: M2,
        pub base: [Pt; 2],
    }

    /// [g] (x) beta: graph of g on factors (1, 2) tensored with the
    /// points of beta on factor 3, minus the horizontal and det(g)
    /// vertical corrections of the graph decomposition.
    pub fn g112_cosets(g: M2, beta: &[(Pt, i64)]) -> Vec<Coset3> {
        let mut out = Vec::new();
        for &(z, w) in beta {
            out.push(Coset3 {
                w,
                a: [ID, g, ZERO],
                base: [[0, 0], [0, 0], z],
            });
            out.push(Coset3 {
                w: -w,
                a: [ID, ZERO, ZERO],
                base: [[0, 0], [0, 0], z],
            });
            out.push(Coset3 {
                w: -w * det(g),
                a: [ZERO, ID, ZERO],
                base: [[0, 0], [0, 0], z],
            });
        }
        out
    }

    /// alpha (x) [h]: points of alpha on factor 1 tensored with the
    /// graph class of h on factors (2, 3).
    pub fn g211_cosets(alpha: &[(Pt, i64)], h: M2) -> Vec<Coset3> {
        let mut out = Vec::new();
        for &(p, w) in alpha {
            out.push(Coset3 {
                w,
                a: [ZERO, ID, h],
                base: [p, [0, 0], [0, 0]],
            });
            out.push(Coset3 {
                w: -w,
                a: [ZERO, ID, ZERO],
                base: [p, [0, 0], [0, 0]],
            });
            out.push(Coset3 {
                w: -w * det(h),
                a: [ZERO, ZERO, ID],
                base: [p, [0, 0], [0, 0]],
            });
        }
        out
    }

    /// [E1] (x) beta (x) theta.
    pub fn g022_cosets(beta: &[(Pt, i64)], theta: &[(Pt, i64)]) -> Vec<Coset3> {
        let mut out = Vec::new();
        for &(y, wy) in beta {
            for &(z, wz) in theta {
                out.push(Coset3 {
                    w: wy * wz,
                    a: [ID, ZERO, ZERO],
                    base: [[0, 0], y, z],
                });
            }
        }
        out
    }

    /// alpha (x) [E2] (x) gamma.
    pub fn g202_cosets(alpha: &[(Pt, i64)], gamma: &[(Pt, i64)]) -> Vec<Coset3> {
        let mut out = Vec::new();
        for &(p, wp) in alpha {
            for &(z, wz) in gamma {
                out.push(Coset3 {
                    w: wp * wz,
                    a: [ZERO, ID, ZERO],
                    base: [p, [0, 0], z],
                });
            }
        }
        out
    }

    /// alpha (x) beta (x) [E3].
    pub fn g220_cosets(alpha: &[(Pt, i64)], beta: &[(Pt, i64)]) -> Vec<Coset3> {
        let mut out = Vec::new();
        for &(p, wp) in alpha {
            for &(y, wy) in beta {
                out.push(Coset3 {
                    w: wp * wy,
                    a: [ZERO, ZERO, ID],
                    base: [p, y, [0, 0]],
                });
            }
        }
        out
    }

    /// id x (addition of factors 2 and 3), applied to the parametrized
    /// cosets: matrices and base points add coordinatewise.
    pub fn pushforward(cosets: &[Coset3]) -> Vec<Coset2> {
        cosets
            .iter()
            .map(|c| Coset2 {
                w: c.w,
                a1: c.a[0],
                a2: mat_add(c.a[1], c.a[2]),
                base: [c.base[0], pt_add(c.base[1], c.base[2])],
            })
            .collect()
    }

    /// Divisor-class invariants of a pushed cycle, everything reduced
    /// mod l except the E2 degree (a plain weight sum). Jacobian points
    /// are accumulated as coordinate sums in (Z/L)^2.
    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct FiniteDivisor {
        pub e1_deg: i64,
        pub e1_aj: Pt,
        pub e2_deg: i64,
        pub e2_aj: Pt,
        pub hom: M2,
    }

    /// Reads each coset from its support: a coset still parametrized by
    /// the first factor is the graph of an affine map (matrix mod l,
    /// translation point); its graph decomposition contributes the
    /// translation point to the E2 part, det to the E1 part and the
    /// matrix to the hom part. A coset with constant first factor is a
    /// multiple of a vertical fiber, with multiplicity det of its
    /// parametrizing matrix.
    pub fn recover(cosets: &[Coset2], l: i64) -> FiniteDivisor {
        let mut e1_deg = 0i64;
        let mut e1_aj = [0i64; 2];
        let mut e2_deg = 0i64;
        let mut e2_aj = [0i64; 2];
        let mut hom = ZERO;
        for c in cosets {
            if c.a1 == ID {
                let a = mat_mod(c.a2, l);
                let y0 = pt_mod(pt_sub(c.base[1], mat_vec(c.a2, c.base[0])), l);
                e2_deg += c.w;
                e2_aj = pt_add(e2_aj, [c.w * y0[0], c.w * y0[1]]);
                e1_deg += c.w * det(a);
                for i in 0..2 {
                    for j in 0..2 {
                        hom[i][j] += c.w * a[i][j];
                    }
                }
            } else if c.a1 == ZERO {
                let mult = c.w * det(mat_mod(c.a2, l));
                e1_deg += mult;
                e1_aj = pt_add(e1_aj, [mult * c.base[0][0], mult * c.base[0][1]]);
            } else {
                panic!("unexpected coset parametrization on the first factor");
            }
        }
        FiniteDivisor {
            e1_deg: e1_deg.rem_euclid(l),
            e1_aj: pt_mod(e1_aj, l),
            e2_deg,
            e2_aj: pt_mod(e2_aj, l),
            hom: mat_mod(hom, l),
        }
    }
}

pub mod symbolic {
    use super::point_oracle::{FiniteDivisor, Pt};
    use ccc_core::chow::ProductDivisorClass;
    use ccc_core::elliptic::{TorsionPoint, ZeroCycleClass};
    use num_rational::Ratio;

    pub fn torsion_pt(p: Pt, l: i64) -> TorsionPoint<i64> {
        TorsionPoint::new(Ratio::new(p[0], l), Ratio::new(p[1], l))
    }

    /// The class of a weighted point list at torsion level l.
    pub fn cycle_class(points: &[(Pt, i64)], l: i64) -> ZeroCycleClass<i64> {
        points.iter().fold(ZeroCycleClass::zero(), |acc, &(p, w)| {
            acc + ZeroCycleClass::point(&torsion_pt(p, l)).scale(&w)
        })
    }

    fn aj_mod(aj: &(Ratio<i64>, Ratio<i64>), l: i64) -> Pt {
        let read = |r: &Ratio<i64>| {
            assert_eq!(l % r.denom(), 0, "test points must be l-torsion");
            (r.numer() * (l / r.denom())).rem_euclid(l)
        };
        [read(&aj.0), read(&aj.1)]
    }

    /// Reduce a symbolic divisor class to the invariants the finite
    /// model sees at level l (E1 degree mod l, E2 degree exact).
    pub fn reduce(div: &ProductDivisorClass<i64>, l: i64) -> FiniteDivisor {
        FiniteDivisor {
            e1_deg: div.from_e1.degree().rem_euclid(l),
            e1_aj: aj_mod(div.from_e1.aj(), l),
            e2_deg: *div.from_e2.degree(),
            e2_aj: aj_mod(div.from_e2.aj(), l),
            hom: [
                [
                    div.hom.e[0][0].rem_euclid(l),
                    div.hom.e[0][1].rem_euclid(l),
                ],
                [
                    div.hom.e[1][0].rem_euclid(l),
                    div.hom.e[1][1].rem_euclid(l),
                ],
            ],
        }
    }
}
