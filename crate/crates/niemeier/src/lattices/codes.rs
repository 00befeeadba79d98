//! The glue codes that are too large to tabulate by hand: the binary and
//! ternary Golay codes (built from quadratic-residue cyclic codes by
//! factoring x^23 - 1 over GF(2) and x^11 - 1 over GF(3)), the hexacode
//! over GF(4), and the tetracode over GF(3).
//!
//! Each constructor cross-checks the defining invariants of the code it
//! returns (dimension, self-duality, minimum weight), so a wrong branch in
//! the polynomial factoring cannot slip through.

/// Multiply polynomials over GF(2), coefficients as a bitmask.
fn gf2_mul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut shift = 0;
    while a != 0 {
        if a & 1 == 1 {
            acc ^= b << shift;
        }
        a >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of a mod b over GF(2).
fn gf2_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros() as i32;
    loop {
        if a == 0 {
            return 0;
        }
        let da = 63 - a.leading_zeros() as i32;
        if da < db {
            return a;
        }
        a ^= b << (da - db);
    }
}

/// A monic degree-11 factor of x^23 + 1 over GF(2). The two such factors
/// are the quadratic-residue polynomial and its reciprocal; either
/// generates the binary Golay code.
fn golay_generator_poly() -> u64 {
    let modulus: u64 = (1 << 23) | 1;
    for low in 0..1u64 << 10 {
        // monic, nonzero constant term
        let g = (1 << 11) | (low << 1) | 1;
        if gf2_rem(modulus, g) == 0 {
            return g;
        }
    }
    unreachable!("x^23 + 1 has a degree-11 factor over GF(2)");
}

/// Generator rows of the extended binary Golay code [24,12,8], one u32
/// bitmask per row (bit i = coordinate i; bit 23 is the parity coordinate).
pub fn binary_golay_generators() -> Vec<u32> {
    let g = golay_generator_poly();
    let mut rows = Vec::with_capacity(12);
    for i in 0..12 {
        let w = gf2_mul(g, 1 << i) as u32; // degree <= 22, fits 23 bits
        let parity = (w.count_ones() % 2) << 23;
        rows.push(w | parity);
    }
    // Invariants: self-dual, all weights divisible by 4, min weight 8.
    let words = binary_golay_words(&rows);
    assert_eq!(words.len(), 4096);
    for &w in &words {
        let wt = w.count_ones();
        assert_eq!(wt % 4, 0, "Golay weight not divisible by 4");
        assert!(wt == 0 || wt >= 8, "Golay minimum weight violated");
    }
    for &a in &rows {
        for &b in &rows {
            assert_eq!((a & b).count_ones() % 2, 0, "Golay not self-orthogonal");
        }
    }
    rows
}

/// All 4096 codewords spanned by the generator rows.
pub fn binary_golay_words(rows: &[u32]) -> Vec<u32> {
    let mut words = vec![0u32];
    for &r in rows {
        let mut next = Vec::with_capacity(words.len() * 2);
        for &w in &words {
            next.push(w);
            next.push(w ^ r);
        }
        words = next;
    }
    words
}

/// Multiply polynomials over GF(3), dense coefficient vectors.
fn gf3_mul(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % 3;
        }
    }
    out
}

/// Remainder of a mod b over GF(3), b monic.
fn gf3_rem(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut r: Vec<u8> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - db;
            for i in 0..=db {
                r[shift + i] = (r[shift + i] + (3 - lead) * b[i] % 3 + 3) % 3;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r
}

fn gf3_is_zero(p: &[u8]) -> bool {
    p.iter().all(|&c| c == 0)
}

/// Monic degree-5 factors of x^11 - 1 over GF(3), by exhaustive search.
fn ternary_qr_polys() -> Vec<Vec<u8>> {
    // x^11 - 1 = x^11 + 2 over GF(3)
    let mut modulus = vec![0u8; 12];
    modulus[0] = 2;
    modulus[11] = 1;
    let mut found = Vec::new();
    for code in 0..3u32.pow(5) {
        let mut g = vec![0u8; 6];
        let mut c = code;
        for coeff in g.iter_mut().take(5) {
            *coeff = (c % 3) as u8;
            c /= 3;
        }
        g[5] = 1;
        if g[0] != 0 && gf3_is_zero(&gf3_rem(&modulus, &g)) {
            found.push(g);
        }
    }
    found
}

/// Generator rows of the extended ternary Golay code [12,6,6], entries in
/// {0,1,2}. The parity sign is chosen so the result is self-dual.
pub fn ternary_golay_generators() -> Vec<Vec<u8>> {
    for g in ternary_qr_polys() {
        for parity_sign in [1u8, 2u8] {
            let mut rows = Vec::with_capacity(6);
            for i in 0..6 {
                let mut shift = vec![0u8; i + 1];
                shift[i] = 1;
                let p = gf3_mul(&g, &shift);
                let mut row = vec![0u8; 12];
                row[..p.len()].copy_from_slice(&p);
                let sum: u8 = row.iter().take(11).fold(0, |a, &b| (a + b) % 3);
                row[11] = parity_sign * (3 - sum) % 3;
                rows.push(row);
            }
            if ternary_self_dual(&rows) && ternary_min_weight_ok(&rows) {
                return rows;
            }
        }
    }
    unreachable!("extended ternary Golay construction failed");
}

fn ternary_self_dual(rows: &[Vec<u8>]) -> bool {
    rows.iter().all(|a| {
        rows.iter().all(|b| {
            a.iter().zip(b).map(|(&x, &y)| x * y).sum::<u8>() % 3 == 0
        })
    })
}

fn ternary_min_weight_ok(rows: &[Vec<u8>]) -> bool {
    // Walk all 729 codewords; nonzero weights must be >= 6.
    let mut words = vec![vec![0u8; 12]];
    for r in rows {
        let mut next = Vec::with_capacity(words.len() * 3);
        for w in &words {
            for m in 0..3u8 {
                let combo: Vec<u8> =
                    w.iter().zip(r).map(|(&a, &b)| (a + m * b) % 3).collect();
                next.push(combo);
            }
        }
        words = next;
    }
    words.iter().all(|w| {
        let wt = w.iter().filter(|&&c| c != 0).count();
        wt == 0 || wt >= 6
    })
}

/// GF(4) as {0, 1, w, w^2} encoded 0..=3 with w = 2, w^2 = 3.
fn gf4_mul(a: u8, b: u8) -> u8 {
    if a == 0 || b == 0 {
        return 0;
    }
    const LOG: [u8; 4] = [0, 0, 1, 2];
    const EXP: [u8; 3] = [1, 2, 3];
    EXP[((LOG[a as usize] + LOG[b as usize]) % 3) as usize]
}

fn gf4_add(a: u8, b: u8) -> u8 {
    a ^ b
}

/// GF(2)-generators of the hexacode: words (a, b, c, f(1), f(w), f(w^2))
/// for f(x) = a x^2 + b x + c, as (a, b, c) runs over a GF(2)-basis of
/// GF(4)^3. Entries are GF(4) elements 0..=3.
pub fn hexacode_generators() -> Vec<[u8; 6]> {
    let mut rows = Vec::with_capacity(6);
    for slot in 0..3 {
        for unit in [1u8, 2u8] {
            let (a, b, c) = match slot {
                0 => (unit, 0, 0),
                1 => (0, unit, 0),
                _ => (0, 0, unit),
            };
            let f = |x: u8| gf4_add(gf4_add(gf4_mul(a, gf4_mul(x, x)), gf4_mul(b, x)), c);
            rows.push([a, b, c, f(1), f(2), f(3)]);
        }
    }
    rows
}

/// Generator rows of the tetracode [4,2] over GF(3).
pub fn tetracode_generators() -> Vec<[u8; 4]> {
    let rows = vec![[1u8, 1, 1, 0], [0u8, 1, 2, 1]];
    // Self-duality over GF(3).
    for a in &rows {
        for b in &rows {
            let dot: u8 = a.iter().zip(b).map(|(&x, &y)| x * y).sum();
            assert_eq!(dot % 3, 0);
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    #[test]
    fn binary_golay_weight_distribution() {
        let rows = binary_golay_generators();
        let words = binary_golay_words(&rows);
        let mut dist: HashMap<u32, usize> = HashMap::new();
        for w in words {
            *dist.entry(w.count_ones()).or_default() += 1;
        }
        assert_eq!(dist.get(&0), Some(&1));
        assert_eq!(dist.get(&8), Some(&759));
        assert_eq!(dist.get(&12), Some(&2576));
        assert_eq!(dist.get(&16), Some(&759));
        assert_eq!(dist.get(&24), Some(&1));
    }

    #[test]
    fn ternary_golay_weight_distribution() {
        let rows = ternary_golay_generators();
        let mut words = vec![vec![0u8; 12]];
        for r in &rows {
            let mut next = Vec::new();
            for w in &words {
                for m in 0..3u8 {
                    next.push(
                        w.iter().zip(r).map(|(&a, &b)| (a + m * b) % 3).collect(),
                    );
                }
            }
            words = next;
        }
        let mut dist: HashMap<usize, usize> = HashMap::new();
        for w in &words {
            *dist.entry(w.iter().filter(|&&c| c != 0).count()).or_default() += 1;
        }
        assert_eq!(dist.get(&0), Some(&1));
        assert_eq!(dist.get(&6), Some(&264));
        assert_eq!(dist.get(&9), Some(&440));
        assert_eq!(dist.get(&12), Some(&24));
    }

    #[test]
    fn hexacode_has_64_words_min_weight_4() {
        let rows = hexacode_generators();
        let mut words = vec![[0u8; 6]];
        for r in &rows {
            let mut next = Vec::new();
            for w in &words {
                next.push(*w);
                let mut s = *w;
                for i in 0..6 {
                    s[i] = gf4_add(s[i], r[i]);
                }
                next.push(s);
            }
            words = next;
        }
        words.sort();
        words.dedup();
        assert_eq!(words.len(), 64);
        for w in &words {
            let wt = w.iter().filter(|&&c| c != 0).count();
            assert!(wt == 0 || wt >= 4);
        }
    }

    #[test]
    fn gf4_field_axioms() {
        assert_eq!(gf4_mul(2, 2), 3); // w^2
        assert_eq!(gf4_mul(2, 3), 1); // w^3 = 1
        assert_eq!(gf4_add(2, 3), 1); // w + w^2 = 1
        for a in 1..4u8 {
            assert_eq!(gf4_mul(a, 1), a);
        }
    }
}
