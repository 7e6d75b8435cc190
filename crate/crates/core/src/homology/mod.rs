//! Integral homology of order complexes: absolute, reduced and relative.

mod complex;
mod matrix;
mod snf;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::category::{CategoryError, LoopFreeCategory, ObjIx};

pub use complex::{OrderComplex, Simplex};
pub use matrix::IntMatrix;
pub use snf::{rank_mod_p, smith_normal_form, smith_normal_form_with_transforms, SnfResult};

/// Betti numbers and torsion coefficients by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub betti: Vec<usize>,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<Vec<BigInt>>,
    pub reduced: bool,
}

fn serialize_torsion<S: Serializer>(torsion: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let as_text: Vec<Vec<String>> = torsion
        .iter()
        .map(|t| t.iter().map(ToString::to_string).collect())
        .collect();
    as_text.serialize(s)
}

impl HomologyProfile {
    fn zero(len: usize, reduced: bool) -> Self {
        Self {
            betti: vec![0; len],
            torsion: vec![Vec::new(); len],
            reduced,
        }
    }

    pub fn betti(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn torsion(&self, k: usize) -> &[BigInt] {
        self.torsion.get(k).map_or(&[], Vec::as_slice)
    }

    /// Every group vanishes.
    pub fn is_zero(&self) -> bool {
        self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }

    pub fn is_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// Degree-wise equality, treating missing degrees as zero.
    pub fn agrees_with(&self, other: &HomologyProfile) -> bool {
        let len = self.betti.len().max(other.betti.len());
        (0..len).all(|k| self.betti(k) == other.betti(k) && self.torsion(k) == other.torsion(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.betti)
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.betti.is_empty() {
            return f.write_str("(all zero)");
        }
        let mut first = true;
        for (k, b) in self.betti.iter().enumerate() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "b_{k}={b}")?;
        }
        for (k, t) in self.torsion.iter().enumerate() {
            if !t.is_empty() {
                let coeffs: Vec<String> = t.iter().map(ToString::to_string).collect();
                write!(f, " T_{k}={}", coeffs.join(","))?;
            }
        }
        Ok(())
    }
}

pub(crate) fn alternating_sum(values: &[usize]) -> i64 {
    values
        .iter()
        .enumerate()
        .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// A finite free chain complex `C_n -> … -> C_0`, `boundaries[k-1] = ∂_k`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn of(k: &OrderComplex<'_>) -> Self {
        let len = k.dim().map_or(0, |d| d + 1);
        let chain = Self {
            dims: (0..len).map(|d| k.num_cells(d)).collect(),
            boundaries: k.boundary_matrices(),
        };
        debug_assert!(chain.squares_to_zero());
        chain
    }

    /// Chains of `k` modulo chains lying entirely in the objects of `sub`.
    pub fn quotient(k: &OrderComplex<'_>, sub: &BTreeSet<ObjIx>) -> Self {
        let mut mask = vec![false; k.category().num_objects()];
        for &o in sub {
            mask[o] = true;
        }
        let len = k.dim().map_or(0, |d| d + 1);
        let kept: Vec<Vec<usize>> = (0..len)
            .map(|d| {
                (0..k.num_cells(d))
                    .filter(|&i| !k.lies_in(&k.cells(d)[i], &mask))
                    .collect()
            })
            .collect();
        let boundaries = (1..len)
            .map(|d| k.boundary(d).select(&kept[d - 1], &kept[d]))
            .collect();
        let chain = Self {
            dims: kept.iter().map(Vec::len).collect(),
            boundaries,
        };
        debug_assert!(chain.squares_to_zero());
        chain
    }

    pub fn squares_to_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|pair| pair[0].mul(&pair[1]).is_zero())
    }

    /// Integral homology; `augmented` adds `ε: C_0 -> Z` for reduced homology.
    pub fn homology(&self, augmented: bool) -> HomologyProfile {
        let n = self.dims.len();
        let mut profile = HomologyProfile::zero(n, augmented);
        let snfs: Vec<SnfResult> = self.boundaries.iter().map(smith_normal_form).collect();
        // rank_in[k] = rank ∂_k
        let rank_in = |k: usize| -> usize {
            match k {
                0 => usize::from(augmented && self.dims.first().is_some_and(|&d| d > 0)),
                k if k < n => snfs[k - 1].rank,
                _ => 0,
            }
        };
        #[allow(clippy::needless_range_loop)]
        for k in 0..n {
            profile.betti[k] = self.dims[k] - rank_in(k) - rank_in(k + 1);
            if k + 1 < n {
                profile.torsion[k] = snfs[k].torsion();
            }
        }
        profile
    }

    /// Betti numbers over `F_p`.
    pub fn betti_mod_p(&self, p: u64) -> Vec<usize> {
        let n = self.dims.len();
        let ranks: Vec<usize> = self.boundaries.iter().map(|m| rank_mod_p(m, p)).collect();
        (0..n)
            .map(|k| {
                let r_in = if k == 0 { 0 } else { ranks[k - 1] };
                let r_out = ranks.get(k).copied().unwrap_or(0);
                self.dims[k] - r_in - r_out
            })
            .collect()
    }
}

/// Homology of an order complex.
pub fn homology(k: &OrderComplex<'_>) -> HomologyProfile {
    ChainComplex::of(k).homology(false)
}

/// Reduced homology; the empty complex has none.
pub fn reduced_homology(k: &OrderComplex<'_>) -> Option<HomologyProfile> {
    k.dim()?;
    Some(ChainComplex::of(k).homology(true))
}

pub fn category_homology(cat: &LoopFreeCategory) -> HomologyProfile {
    homology(&OrderComplex::new(cat, None))
}

/// Homology of the full subcategory on `objects`.
pub fn subcategory_homology(cat: &LoopFreeCategory, objects: &BTreeSet<ObjIx>) -> HomologyProfile {
    homology(&OrderComplex::of_full_subcategory(cat, objects))
}

/// Homology of the pair `(cat, full subcategory on sub_objects)`.
pub fn relative_homology(
    cat: &LoopFreeCategory,
    sub_objects: &BTreeSet<ObjIx>,
) -> Result<HomologyProfile, CategoryError> {
    let all: BTreeSet<ObjIx> = (0..cat.num_objects()).collect();
    relative_homology_of(cat, &all, sub_objects)
}

/// Homology of the pair of full subcategories `(whole, sub)` of `cat`.
pub fn relative_homology_of(
    cat: &LoopFreeCategory,
    whole: &BTreeSet<ObjIx>,
    sub: &BTreeSet<ObjIx>,
) -> Result<HomologyProfile, CategoryError> {
    if let Some(&bad) = whole.iter().chain(sub).find(|&&o| o >= cat.num_objects()) {
        return Err(CategoryError::UnknownObject(format!("#{bad}")));
    }
    if let Some(&stray) = sub.difference(whole).next() {
        return Err(CategoryError::UnknownObject(cat.object_id(stray).to_owned()));
    }
    let k = OrderComplex::of_full_subcategory(cat, whole);
    Ok(ChainComplex::quotient(&k, sub).homology(false))
}

/// Non-empty with the homology of a point.
pub fn is_homologically_trivial(cat: &LoopFreeCategory) -> bool {
    reduced_homology(&OrderComplex::new(cat, None)).is_some_and(|h| h.is_zero())
}

/// [`is_homologically_trivial`] for the full subcategory on `objects`.
pub fn is_homologically_trivial_on(cat: &LoopFreeCategory, objects: &BTreeSet<ObjIx>) -> bool {
    reduced_homology(&OrderComplex::of_full_subcategory(cat, objects)).is_some_and(|h| h.is_zero())
}

/// Alternating sum of Betti numbers, checked against the alternating count
/// of simplices.
pub fn euler_characteristic(cat: &LoopFreeCategory) -> i64 {
    let k = OrderComplex::new(cat, None);
    let from_betti = homology(&k).euler_characteristic();
    let from_counts = k.euler_from_counts();
    assert_eq!(
        from_betti, from_counts,
        "Euler characteristic disagrees between Betti numbers and cell counts"
    );
    from_betti
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(cat: &LoopFreeCategory, ids: &[&str]) -> BTreeSet<ObjIx> {
        cat.object_set(ids).unwrap()
    }

    #[test]
    fn fixture_betti_numbers() {
        assert_eq!(category_homology(&fixtures::f4()).betti, [1, 1]);
        assert_eq!(category_homology(&fixtures::i2()).betti, [1, 0, 0]);
        assert_eq!(category_homology(&fixtures::pa()).betti, [1, 1]);
        assert_eq!(category_homology(&fixtures::p1()).betti, [1]);
        assert_eq!(category_homology(&fixtures::sphere()).betti, [1, 0, 1]);
        assert!(category_homology(&fixtures::empty()).betti.is_empty());
        for cat in fixtures::all() {
            assert!(category_homology(&cat).is_free());
        }
    }

    #[test]
    fn reduced_homology_of_the_fence() {
        let f4 = fixtures::f4();
        let h = reduced_homology(&OrderComplex::new(&f4, None)).unwrap();
        assert_eq!(h.betti, [0, 1]);
        assert!(reduced_homology(&OrderComplex::new(&fixtures::empty(), None)).is_none());
    }

    #[test]
    fn relative_examples() {
        let i1 = fixtures::i1();
        let h = relative_homology(&i1, &set(&i1, &["x"])).unwrap();
        assert!(h.is_zero());

        let f4 = fixtures::f4();
        let closure = set(&f4, &["a", "b", "d"]);
        let h = relative_homology_of(&f4, &closure, &set(&f4, &["a", "b"])).unwrap();
        assert_eq!(h.betti, [0, 1]);

        for cat in fixtures::all() {
            let all: BTreeSet<ObjIx> = (0..cat.num_objects()).collect();
            assert!(relative_homology(&cat, &all).unwrap().is_zero());
        }
        assert!(relative_homology(&f4, &BTreeSet::from([17])).is_err());
    }

    #[test]
    fn relative_to_empty_is_absolute() {
        for cat in fixtures::all() {
            let rel = relative_homology(&cat, &BTreeSet::new()).unwrap();
            assert_eq!(rel, category_homology(&cat));
        }
    }

    #[test]
    fn triviality() {
        assert!(is_homologically_trivial(&fixtures::p1()));
        assert!(!is_homologically_trivial(&fixtures::empty()));
        assert!(!is_homologically_trivial(&fixtures::pa()));
        assert!(is_homologically_trivial(&fixtures::i2()));
        // t receives two arrows from x, so it is not terminal and the
        // complex is two triangles sharing an edge and the opposite vertex
        assert!(!is_homologically_trivial(&fixtures::parallel_cone()));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&fixtures::f4()), 0);
        assert_eq!(euler_characteristic(&fixtures::i2()), 1);
        assert_eq!(euler_characteristic(&fixtures::p1()), 1);
        for cat in fixtures::all() {
            euler_characteristic(&cat);
        }
    }

    #[test]
    fn categories_with_a_terminal_object_are_acyclic() {
        for cat in fixtures::all() {
            for c in 0..cat.num_objects() {
                let u = cat.under_category(c, false).unwrap();
                if !u.terminal_objects().is_empty() {
                    assert!(is_homologically_trivial(&u));
                }
            }
        }
    }

    #[test]
    fn display() {
        let h = category_homology(&fixtures::f4());
        assert_eq!(h.to_string(), "b_0=1 b_1=1");
    }

    #[test]
    fn betti_mod_p_matches_integral_for_torsion_free() {
        for cat in fixtures::all() {
            let k = OrderComplex::new(&cat, None);
            let chain = ChainComplex::of(&k);
            assert_eq!(chain.betti_mod_p(2), homology(&k).betti);
        }
    }

    #[test]
    fn torsion_detected_in_a_hand_built_complex() {
        // C_1 = Z --(×2)--> C_0 = Z  gives H_0 = Z/2
        let chain = ChainComplex {
            dims: vec![1, 1],
            boundaries: vec![IntMatrix::from_dense(&[vec![2]])],
        };
        let h = chain.homology(false);
        assert_eq!(h.betti, [0, 0]);
        assert_eq!(h.torsion(0), [BigInt::from(2)]);
        assert_eq!(chain.betti_mod_p(2), [1, 1]);
        assert_eq!(chain.betti_mod_p(3), [0, 0]);
    }
}
