//! Independent oracles. Nothing here calls into the library; values are
//! computed from first principles with machine integers.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn binom(n: i128, k: u32) -> i128 {
    // generalized binomial coefficient, n may be negative
    let mut num = 1i128;
    let mut den = 1i128;
    for j in 0..k as i128 {
        num *= n - j;
        den *= j + 1;
    }
    num / den
}

/// χ(O, O(d)) on Pᵐ.
pub fn euler(m: u32, d: i128) -> i128 {
    binom(d + m as i128, m)
}

/// Sheaf cohomology of O(d) on Pᵐ.
pub fn cohomology(m: u32, d: i128) -> Vec<i128> {
    let mut h = vec![0i128; m as usize + 1];
    if d >= 0 {
        h[0] = binom(d + m as i128, m);
    }
    if d < -(m as i128) {
        h[m as usize] = binom(-d - 1, m);
    }
    h
}

pub fn gram(m: u32) -> Vec<Vec<i128>> {
    let n = m as usize + 1;
    (0..n)
        .map(|i| (0..n).map(|j| euler(m, j as i128 - i as i128)).collect())
        .collect()
}

pub fn pair(g: &[Vec<i128>], x: &[i128], y: &[i128]) -> i128 {
    let n = g.len();
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            s += x[i] * g[i][j] * y[j];
        }
    }
    s
}

/// Coordinates of [O(d)] in ([O], …, [O(m)]) from the Koszul relation
/// Σ_k (-1)^k C(m+1,k) [O(t-k)] = 0.
pub fn line_bundle(m: u32, d: i128) -> Vec<i128> {
    let n = m as usize + 1;
    let coeff: Vec<i128> = (0..=n as u32)
        .map(|k| if k % 2 == 0 { binom(n as i128, k) } else { -binom(n as i128, k) })
        .collect();
    // window[j] = class of O(lo + j)
    let mut lo = 0i128;
    let mut window: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut v = vec![0; n];
            v[j] = 1;
            v
        })
        .collect();
    while d >= lo + n as i128 {
        // O(lo+n) = -Σ_{k=1}^{n} c_k O(lo+n-k)
        let mut next = vec![0i128; n];
        for k in 1..=n {
            let src = &window[n - k];
            for t in 0..n {
                next[t] -= coeff[k] * src[t];
            }
        }
        window.remove(0);
        window.push(next);
        lo += 1;
    }
    while d < lo {
        // Σ_{k=0}^{n} c_k O(lo+n-1-k) = 0 gives O(lo-1)
        let mut acc = vec![0i128; n];
        for k in 0..n {
            let src = &window[n - 1 - k];
            for t in 0..n {
                acc[t] -= coeff[k] * src[t];
            }
        }
        let lead = coeff[n];
        let prev: Vec<i128> = acc.iter().map(|x| x / lead).collect();
        window.pop();
        window.insert(0, prev);
        lo -= 1;
    }
    window[(d - lo) as usize].clone()
}

/// Every ordered positive solution of a² + b² + c² = abc with abc ≤ bound.
pub fn markov_scan(bound: i128) -> BTreeSet<(i128, i128, i128)> {
    let mut sorted = BTreeSet::new();
    let mut a = 1i128;
    while a * a * a <= bound {
        let mut b = a;
        while a * b * b <= bound {
            let disc = (a * b) * (a * b) - 4 * (a * a + b * b);
            if disc >= 0 {
                let s = isqrt(disc);
                if s * s == disc {
                    for c2 in [a * b - s, a * b + s] {
                        if c2 > 0 && c2 % 2 == 0 {
                            let c = c2 / 2;
                            if c >= b && a * b * c <= bound {
                                sorted.insert((a, b, c));
                            }
                        }
                    }
                }
            }
            b += 1;
        }
        a += 1;
    }
    let mut out = BTreeSet::new();
    for (a, b, c) in sorted {
        for p in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            out.insert(p);
        }
    }
    out
}

/// Literal triple loop over a box of entries.
pub fn markov_box_scan(max_entry: i128, bound: i128) -> BTreeSet<(i128, i128, i128)> {
    let mut out = BTreeSet::new();
    for a in 1..=max_entry {
        for b in 1..=max_entry {
            for c in 1..=max_entry {
                if a * a + b * b + c * c == a * b * c && a * b * c <= bound {
                    out.insert((a, b, c));
                }
            }
        }
    }
    out
}

pub fn isqrt(x: i128) -> i128 {
    let mut r = (x as f64).sqrt() as i128;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

pub type Triple = (i128, i128, i128);

pub fn op_v(t: Triple) -> Triple {
    (t.1, t.0, t.0 * t.1 - t.2)
}

pub fn op_w(t: Triple) -> Triple {
    (t.2, t.0, t.1)
}

pub fn op_winv(t: Triple) -> Triple {
    (t.1, t.2, t.0)
}

/// Action of σ₁^{±1}, σ₂^{±1} through f(σ₁) = w⁻¹v, f(σ₂) = vw⁻¹.
pub fn f_act(index: usize, inverse: bool, t: Triple) -> Triple {
    match (index, inverse) {
        (1, false) => op_winv(op_v(t)),
        (1, true) => op_v(op_w(t)),
        (2, false) => op_v(op_winv(t)),
        (2, true) => op_w(op_v(t)),
        _ => panic!("bad index"),
    }
}

/// Action of r and τ_i through g(r) = w, g(τ_i) = w^{i+1} v w^{1-i}.
pub fn g_act(letter: Option<usize>, inverse: bool, t: Triple) -> Triple {
    let wp = |k: i64, t: Triple| -> Triple {
        let mut t = t;
        for _ in 0..k.rem_euclid(3) {
            t = op_w(t);
        }
        t
    };
    match letter {
        None => {
            if inverse {
                op_winv(t)
            } else {
                op_w(t)
            }
        }
        Some(i) => {
            let i = i as i64;
            if inverse {
                // w^{i-1} v w^{-i-1}
                wp(i - 1, op_v(wp(-i - 1, t)))
            } else {
                wp(i + 1, op_v(wp(1 - i, t)))
            }
        }
    }
}

/// Free-group words as (generator, ±1) pairs; classical Artin action
/// σ_i: x_i ↦ x_i x_{i+1} x_i⁻¹, x_{i+1} ↦ x_i on generators x_1, …, x_n.
pub type Word = Vec<(usize, i8)>;

pub fn free_reduce(w: &[(usize, i8)]) -> Word {
    let mut out: Word = Vec::new();
    for &(g, e) in w {
        if let Some(&(h, f)) = out.last() {
            if h == g && f == -e {
                out.pop();
                continue;
            }
        }
        out.push((g, e));
    }
    out
}

fn invert(w: &[(usize, i8)]) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn substitute(images: &[Word], w: &[(usize, i8)]) -> Word {
    let mut out = Vec::new();
    for &(g, e) in w {
        if e > 0 {
            out.extend_from_slice(&images[g]);
        } else {
            out.extend(invert(&images[g]));
        }
    }
    free_reduce(&out)
}

/// Images of x_1..x_n (index 0 unused) under the word, letters signed.
pub fn artin_images(n: usize, word: &[i64]) -> Vec<Word> {
    let mut acc: Vec<Word> = (0..=n).map(|i| vec![(i, 1)]).collect();
    // acc = acc ∘ letter, so the image of x under the word is acc(x)
    for &l in word {
        let i = l.unsigned_abs() as usize;
        let mut g: Vec<Word> = (0..=n).map(|j| vec![(j, 1)]).collect();
        if l > 0 {
            g[i] = vec![(i, 1), (i + 1, 1), (i, -1)];
            g[i + 1] = vec![(i, 1)];
        } else {
            g[i] = vec![(i + 1, 1)];
            g[i + 1] = vec![(i + 1, -1), (i, 1), (i + 1, 1)];
        }
        acc = g.iter().map(|img| substitute(&acc, img)).collect();
    }
    acc
}
