//! The frozen basis-blade table of Cl(1,3).
//!
//! Blades are stored as 4-bit masks (bit μ set ⇔ γ^μ is a factor, factors in
//! increasing index order). The canonical ordering is by grade, then
//! lexicographic in the index list:
//!
//! ```text
//!  0: 1      5: g01    11: g012   15: g0123
//!  1: g0     6: g02    12: g013
//!  2: g1     7: g03    13: g023
//!  3: g2     8: g12    14: g123
//!  4: g3     9: g13
//!           10: g23
//! ```
//!
//! Every product sign below is computed by the const evaluator from the
//! anticommutation rule γ^μγ^ν + γ^νγ^μ = 2η^{μν}; nothing is typed in by hand.

/// Number of basis blades.
pub const BLADE_COUNT: usize = 16;

/// Diagonal of the metric, signature (+,−,−,−).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Printable blade names, in canonical order. Index 0 (the scalar) has an empty name.
pub const BLADE_NAMES: [&str; BLADE_COUNT] =
    ["", "g0", "g1", "g2", "g3", "g01", "g02", "g03", "g12", "g13", "g23", "g012", "g013", "g023", "g123", "g0123"];

const fn popcount(x: u8) -> u32 {
    (x & 1) as u32 + ((x >> 1) & 1) as u32 + ((x >> 2) & 1) as u32 + ((x >> 3) & 1) as u32
}

// Reverse the low four bits, so that γ⁰ becomes the most significant digit.
const fn reverse4(x: u8) -> u8 {
    ((x & 1) << 3) | ((x & 2) << 1) | ((x & 4) >> 1) | ((x & 8) >> 3)
}

const fn build_masks() -> [u8; BLADE_COUNT] {
    let mut out = [0u8; BLADE_COUNT];
    let mut n = 0;
    let mut grade = 0;
    while grade <= 4 {
        // Within a grade, lexicographic order of index lists is descending
        // order of the bit-reversed mask.
        let mut r: i32 = 15;
        while r >= 0 {
            if popcount(r as u8) == grade {
                out[n] = reverse4(r as u8);
                n += 1;
            }
            r -= 1;
        }
        grade += 1;
    }
    out
}

/// Blade masks in canonical order.
pub const MASKS: [u8; BLADE_COUNT] = build_masks();

const fn build_index() -> [usize; BLADE_COUNT] {
    let mut out = [0usize; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        out[MASKS[i] as usize] = i;
        i += 1;
    }
    out
}

/// Canonical index of each mask.
pub const INDEX_OF_MASK: [usize; BLADE_COUNT] = build_index();

/// Grade of each canonical blade.
pub const GRADES: [usize; BLADE_COUNT] = {
    let mut out = [0usize; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        out[i] = popcount(MASKS[i]) as usize;
        i += 1;
    }
    out
};

/// Sign of the product of two ordered blades, from reordering swaps and the metric.
const fn mask_product_sign(a: u8, b: u8) -> f64 {
    let mut swaps = 0u32;
    let mut j = 0;
    while j < 4 {
        if (b >> j) & 1 == 1 {
            // Moving γ^j leftwards past every factor of `a` with a larger index.
            swaps += popcount(a >> (j + 1));
        }
        j += 1;
    }
    let mut sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
    let common = a & b;
    let mut k = 0;
    while k < 4 {
        if (common >> k) & 1 == 1 {
            sign *= METRIC[k];
        }
        k += 1;
    }
    sign
}

/// `PRODUCT[i][j] = (k, s)` with blade_i · blade_j = s · blade_k.
pub const PRODUCT: [[(usize, f64); BLADE_COUNT]; BLADE_COUNT] = {
    let mut out = [[(0usize, 0.0f64); BLADE_COUNT]; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        let mut j = 0;
        while j < BLADE_COUNT {
            let a = MASKS[i];
            let b = MASKS[j];
            out[i][j] = (INDEX_OF_MASK[(a ^ b) as usize], mask_product_sign(a, b));
            j += 1;
        }
        i += 1;
    }
    out
};

/// Reversion sign per blade: (−1)^{r(r−1)/2}.
pub const REVERSE_SIGN: [f64; BLADE_COUNT] = {
    let mut out = [0.0f64; BLADE_COUNT];
    let mut i = 0;
    while i < BLADE_COUNT {
        let r = GRADES[i];
        out[i] = if (r * (r.saturating_sub(1)) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        i += 1;
    }
    out
};

/// True when blade `i` is a subset of blade `j` (the left contraction i⌟j is nonzero).
pub const fn is_subset(i: usize, j: usize) -> bool {
    MASKS[i] & MASKS[j] == MASKS[i]
}

/// Indices of γ^μ for μ = 0..3.
pub const VECTOR_INDEX: [usize; 4] = [1, 2, 3, 4];

/// Index of the pseudoscalar γ⁵ = γ⁰γ¹γ²γ³.
pub const PSEUDOSCALAR_INDEX: usize = 15;

/// The textual convention table hashed into run summaries.
pub fn convention_table() -> String {
    let mut s = String::from("signature=+---\n");
    for i in 0..BLADE_COUNT {
        let name = if i == 0 { "1" } else { BLADE_NAMES[i] };
        s.push_str(&format!("{i}:{name}:mask={:04b}\n", MASKS[i]));
    }
    for i in 0..BLADE_COUNT {
        for j in 0..BLADE_COUNT {
            let (k, sign) = PRODUCT[i][j];
            s.push_str(if sign > 0.0 { "+" } else { "-" });
            s.push_str(&format!("{k:x}"));
        }
        s.push('\n');
    }
    s
}
