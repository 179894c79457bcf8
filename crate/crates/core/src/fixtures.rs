//! Reference words used by the tests, the examples and `selftest`.

/// The spun-trefoil word exactly as printed, repeated blocks written out.
///
/// It does not decode: page `P0` receives one more closing than opening
/// half-arc and `P2` one more opening than closing, whatever rotation-
/// equivariant letter table is used. Kept for reference and for the test
/// that documents the defect.
pub const W_G_PRINTED: &str =
    "a0 a1 b2 b0 b1 b2 b0 b1 d0 a1 x1 b1 x1 b1 c1 d1 b0 d1 d0 d2 d1 d0 d2 c1 c0";

/// The printed word with the single missing letter restored: `d1` in front
/// of the first `x1`. Of all one-letter edits of the printed word this is
/// the only one that decodes to a connected marked graph with two saddles
/// whose two resolutions are both unlinks; each resolution has two
/// components, as expected for the double of a one-saddle ribbon disk.
pub const W_G: &str =
    "a0 a1 b2 b0 b1 b2 b0 b1 d0 a1 d1 x1 b1 x1 b1 c1 d1 b0 d1 d0 d2 d1 d0 d2 c1 c0";

/// The canonical one-component unknot: a circle crossing the axis twice,
/// with one arc above and one below in the plane `P0 ∪ P2`.
pub const UNKNOT: &str = "a1 c1";

/// A trefoil knot: the encoding of the standard three-crossing diagram.
pub const TREFOIL: &str = "a0 a1 b2 a0 b1 c2 b0 d1 b2 c1 c1";

/// `k` copies of [`UNKNOT`], the target of triviality proofs.
pub fn unlink(k: usize) -> crate::word::Word {
    crate::word::parse_word(&vec![UNKNOT; k].join(" ")).expect("valid fixture")
}

/// The Hopf link: the encoding of its standard two-crossing diagram.
pub const HOPF: &str = "a0 a1 b2 b0 c1 c2";
