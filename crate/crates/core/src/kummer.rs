//! The Kummer lattice K: the rank-16 primitive sublattice of
//! H^2(Kum(E1 x E2), Z) spanned by the sixteen exceptional (-2)-classes
//! E-bar_i and their half-sum glue vectors, indexed by the points of
//! F_2^4. The glue code is the first-order Reed-Muller code RM(1, 4).
//!
//! Vectors are stored in doubled coordinates (units of E-bar_i / 2), so
//! every lattice element is an integer vector of length 16; E-bar_i
//! itself is 2 e_i and a glue vector is the 0/1 indicator of its
//! codeword. The intersection pairing in these coordinates is
//! <x, y> = -(x . y) / 2.

use crate::lattice::{
    gram_determinant, smith_normal_form, sublattice_index, Lattice, Mat, SublatticeIndex,
};
use crate::{Error, Scalar};

const LENGTH: usize = 16;

/// The binary glue code of the Kummer lattice: length 16, dimension 5,
/// spanned by the all-ones word and the four coordinate hyperplane
/// indicators on F_2^4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerCode {
    generators: [u16; 5],
}

/// Positions p in 0..16 are the points of F_2^4 by their binary digits.
pub fn build_kummer_code() -> KummerCode {
    let mut gens = [0u16; 5];
    gens[0] = 0xffff;
    for (i, gen) in gens.iter_mut().skip(1).enumerate() {
        for p in 0..LENGTH {
            if (p >> i) & 1 == 1 {
                *gen |= 1 << p;
            }
        }
    }
    KummerCode { generators: gens }
}

impl KummerCode {
    pub fn length(&self) -> usize {
        LENGTH
    }

    pub fn generator_words(&self) -> &[u16; 5] {
        &self.generators
    }

    /// Row-echelon basis over F_2, lowest set bit as pivot.
    fn echelon(&self) -> Vec<u16> {
        let mut rows: Vec<u16> = self.generators.to_vec();
        let mut basis: Vec<u16> = Vec::new();
        for p in 0..LENGTH {
            let Some(idx) = rows.iter().position(|&r| (r >> p) & 1 == 1) else {
                continue;
            };
            let pivot_row = rows.swap_remove(idx);
            for r in rows.iter_mut() {
                if (*r >> p) & 1 == 1 {
                    *r ^= pivot_row;
                }
            }
            for b in basis.iter_mut() {
                if (*b >> p) & 1 == 1 {
                    *b ^= pivot_row;
                }
            }
            basis.push(pivot_row);
        }
        basis
    }

    /// Rank of the generator set over F_2.
    pub fn dimension(&self) -> usize {
        self.echelon().len()
    }

    /// All codewords, sorted; 2^dimension of them.
    pub fn codewords(&self) -> Vec<u16> {
        let basis = self.echelon();
        let mut words: Vec<u16> = (0u32..1 << basis.len())
            .map(|mask| {
                basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .fold(0u16, |acc, (_, b)| acc ^ b)
            })
            .collect();
        words.sort_unstable();
        words
    }

    pub fn contains(&self, word: u16) -> bool {
        let mut w = word;
        for b in self.echelon() {
            let p = b.trailing_zeros();
            if (w >> p) & 1 == 1 {
                w ^= b;
            }
        }
        w == 0
    }

    /// Pairs (weight, count) over all codewords, sorted by weight.
    pub fn weight_enumerator(&self) -> Vec<(u32, usize)> {
        let mut counts = [0usize; LENGTH + 1];
        for w in self.codewords() {
            counts[w.count_ones() as usize] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w as u32, c))
            .collect()
    }

    /// The weight enumerator as a polynomial in z, e.g.
    /// "1 + 30z^8 + z^16".
    pub fn weight_enumerator_string(&self) -> String {
        self.weight_enumerator()
            .iter()
            .map(|&(w, c)| {
                let coeff = if c == 1 && w > 0 {
                    String::new()
                } else {
                    c.to_string()
                };
                match w {
                    0 => c.to_string(),
                    1 => format!("{coeff}z"),
                    _ => format!("{coeff}z^{w}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn min_nonzero_weight(&self) -> u32 {
        self.codewords()
            .iter()
            .filter(|&&w| w != 0)
            .map(|w| w.count_ones())
            .min()
            .expect("nontrivial code")
    }
}

fn word_to_vec<T: Scalar>(word: u16) -> Vec<T> {
    (0..LENGTH)
        .map(|p| {
            if (word >> p) & 1 == 1 {
                T::one()
            } else {
                T::zero()
            }
        })
        .collect()
}

/// The Kummer lattice in doubled coordinates, with its gram matrix.
#[derive(Debug, Clone)]
pub struct KummerLattice<T: Scalar> {
    lattice: Lattice<T>,
    code: KummerCode,
}

/// Builds K as the preimage of the glue code under Z^16 -> F_2^16, in
/// doubled coordinates: echelon codeword lifts plus 2 e_j for the
/// non-pivot positions j. The gram matrix applies <x, y> = -(x . y) / 2,
/// which is integral because all codeword weights and intersections are
/// even.
pub fn build_kummer_lattice<T: Scalar>() -> KummerLattice<T> {
    let code = build_kummer_code();
    let echelon = code.echelon();
    let pivot_positions: Vec<u32> = echelon.iter().map(|b| b.trailing_zeros()).collect();
    let mut rows: Vec<Vec<T>> = echelon.iter().map(|&w| word_to_vec(w)).collect();
    let two = T::from(2);
    for j in 0..LENGTH {
        if !pivot_positions.contains(&(j as u32)) {
            let mut row = vec![T::zero(); LENGTH];
            row[j] = two.clone();
            rows.push(row);
        }
    }
    let basis = Mat::from_rows(rows);
    let gram = Mat::from_fn(LENGTH, LENGTH, |i, j| {
        let mut dot = T::zero();
        for p in 0..LENGTH {
            dot += basis[(i, p)].clone() * basis[(j, p)].clone();
        }
        assert!(dot.is_even(), "the pairing must be integral on K");
        -(dot / two.clone())
    });
    let lattice = Lattice::new(basis, Some(gram)).expect("the Kummer basis is independent");
    KummerLattice { lattice, code }
}

impl<T: Scalar> KummerLattice<T> {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn lattice(&self) -> &Lattice<T> {
        &self.lattice
    }

    pub fn code(&self) -> &KummerCode {
        &self.code
    }

    pub fn gram_determinant(&self) -> T {
        gram_determinant(&self.lattice).expect("K carries a gram matrix")
    }

    /// |det Gram(K)|, the discriminant.
    pub fn discriminant(&self) -> T {
        self.gram_determinant().abs()
    }

    /// The root sublattice spanned by the sixteen E-bar_i, i.e. 2 Z^16
    /// in doubled coordinates, with gram -2 I.
    pub fn root_sublattice(&self) -> Lattice<T> {
        let two = T::from(2);
        let basis = Mat::from_fn(LENGTH, LENGTH, |i, j| {
            if i == j {
                two.clone()
            } else {
                T::zero()
            }
        });
        let gram = Mat::from_fn(LENGTH, LENGTH, |i, j| {
            if i == j {
                -two.clone()
            } else {
                T::zero()
            }
        });
        Lattice::new(basis, Some(gram)).expect("diagonal basis")
    }

    /// Intersection number of two lattice elements given in doubled
    /// coordinates; panics when the inputs do not pair integrally.
    pub fn pairing(&self, x: &[T], y: &[T]) -> T {
        let mut dot = T::zero();
        for p in 0..LENGTH {
            dot += x[p].clone() * y[p].clone();
        }
        assert!(dot.is_even(), "vectors outside K do not pair integrally");
        -(dot / T::from(2))
    }
}

/// The two indices from the blow-up comparison, plus the finite content
/// of "K is the full preimage of the span of the exceptional classes".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackIndices<T> {
    /// Index of pi^* K inside the span of the sixteen exceptional
    /// classes E_i of the blow-up (E_i . E_j = -delta_ij).
    pub blowup_index: T,
    /// Index of the root lattice (+) Z E-bar_i inside K.
    pub glue_index: T,
    /// pi^* K lands in (+) Z E_i, contains 2 (+) Z E_i, and has
    /// elementary divisors 1^5, 2^11 there.
    pub preimage_ok: bool,
}

/// Models pi^* by E-bar_i -> 2 E_i, which in doubled coordinates reads a
/// K-vector verbatim as an integer vector in the E_i basis. Computes
/// ([ (+) Z E_i : pi^* K ], [K : (+) Z E-bar_i]) = (2^11, 2^5) and checks
/// the covering compatibility (pi^* x . pi^* y) = 2 (x . y).
pub fn pullback_index_check<T: Scalar>() -> Result<PullbackIndices<T>, Error> {
    let k = build_kummer_lattice::<T>();
    let ambient = Lattice::standard(LENGTH);
    let pushed = Lattice::new(k.lattice().basis().clone(), None)?;
    let SublatticeIndex::Finite(blowup_index) = sublattice_index(&ambient, &pushed)? else {
        return Err(Error::DependentBasis);
    };
    let SublatticeIndex::Finite(glue_index) = sublattice_index(k.lattice(), &k.root_sublattice())?
    else {
        return Err(Error::DependentBasis);
    };

    // pi^* x . pi^* y = -(x . y)_dot on the blow-up side (E_i . E_j =
    // -delta_ij on doubled coordinates read verbatim), which must equal
    // twice the K-pairing -(x . y)_dot / 2.
    let basis = k.lattice().basis();
    let mut compatible = true;
    for i in 0..LENGTH {
        for j in 0..LENGTH {
            let mut dot = T::zero();
            for p in 0..LENGTH {
                dot += basis[(i, p)].clone() * basis[(j, p)].clone();
            }
            let blowup_pairing = -dot;
            let two_of = k.pairing(basis.row(i), basis.row(j)) * T::from(2);
            if blowup_pairing != two_of {
                compatible = false;
            }
        }
    }

    // 2 Z^16 must sit inside pi^* K, and the quotient Z^16 / pi^* K must
    // be elementary 2-torsion of rank 11.
    let mut contains_doubles = true;
    for j in 0..LENGTH {
        let mut v = vec![T::zero(); LENGTH];
        v[j] = T::from(2);
        if !pushed.contains(&v) {
            contains_doubles = false;
        }
    }
    let divisors = smith_normal_form(pushed.basis()).diagonal();
    let ones = divisors.iter().filter(|d| **d == T::one()).count();
    let twos = divisors.iter().filter(|d| **d == T::from(2)).count();
    let preimage_ok = compatible && contains_doubles && ones == 5 && twos == 11;

    Ok(PullbackIndices {
        blowup_index,
        glue_index,
        preimage_ok,
    })
}
