//! Face membership on u64 vertex masks.

use rustc_hash::FxHashSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Largest vertex count for which the 2^m bitmap is used.
const BITMAP_LIMIT: usize = 26;

pub(crate) enum MaskFaces {
    Bitmap(Vec<u64>),
    Hash(FxHashSet<u64>),
}

impl MaskFaces {
    pub(crate) fn new(k: &SimplicialComplex) -> Result<Self> {
        let m = k.vertex_count();
        if m > 64 {
            return Err(Error::ResourceLimit(format!(
                "{m} vertices; mask-based routines support at most 64"
            )));
        }
        let masks = k.faces().map(|s| s.as_mask().expect("m <= 64"));
        if m <= BITMAP_LIMIT {
            let mut bits = vec![0u64; ((1usize << m) + 63) / 64];
            for s in masks {
                bits[(s >> 6) as usize] |= 1 << (s & 63);
            }
            Ok(MaskFaces::Bitmap(bits))
        } else {
            Ok(MaskFaces::Hash(masks.collect()))
        }
    }

    #[inline]
    pub(crate) fn contains(&self, s: u64) -> bool {
        match self {
            MaskFaces::Bitmap(bits) => bits[(s >> 6) as usize] >> (s & 63) & 1 == 1,
            MaskFaces::Hash(h) => h.contains(&s),
        }
    }
}

/// Iterates the set bits of `mask` in increasing order.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let t = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(t)
        }
    })
}

/// Iterates all submasks of `mask`, starting with `mask` itself and ending at 0.
#[inline]
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut cur = Some(mask);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

/// Rank of the full subcomplex on `j`, assuming the exchange property:
/// greedy growth of a face inside `j`.
#[inline]
pub(crate) fn greedy_rank(faces: &MaskFaces, j: u64) -> usize {
    let mut cur = 0u64;
    for v in bits(j) {
        if faces.contains(cur | 1 << v) {
            cur |= 1 << v;
        }
    }
    cur.count_ones() as usize
}
