//! Independent reference implementations used by the integration tests.
//! Everything here works on dense tables and shares no code with the
//! library beyond the scalar type.
#![allow(dead_code)]

use multigraded::scalar::Q;
use num_traits::{One, Signed, Zero};

/// Sign of rearranging degrees `x` into `(x_{σ0}, x_{σ1}, …)`: every pair of
/// entries whose relative order flips contributes `−(−1)^{⟨x_a,x_b⟩}`.
pub fn inversion_sign(sigma: &[usize], x: &[Vec<i64>]) -> i32 {
    let mut pos = vec![0; sigma.len()];
    for (p, &s) in sigma.iter().enumerate() {
        pos[s] = p;
    }
    let mut sign = 1;
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            if pos[a] > pos[b] {
                let ip: i64 = x[a].iter().zip(&x[b]).map(|(u, v)| u * v).sum();
                sign *= if ip.rem_euclid(2) == 0 { -1 } else { 1 };
            }
        }
    }
    sign
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn parity(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Rank by plain Gaussian elimination on a dense copy.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Dense structure constants `mult[a][b][c]` = coefficient of `e_c` in `e_a·e_b`.
pub type Table = Vec<Vec<Vec<Q>>>;

/// All `k`-tuples over `0..d`, lexicographic.
pub fn all_tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

/// A dense `k`-linear map `V^{⊗k} → W`: `values[tuple index][output]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub d: usize,
    pub out: usize,
    pub k: usize,
    pub values: Vec<Vec<Q>>,
}

impl Dense {
    pub fn zero(d: usize, out: usize, k: usize) -> Self {
        Dense { d, out, k, values: vec![vec![Q::zero(); out]; d.pow(k as u32)] }
    }

    pub fn index(&self, t: &[usize]) -> usize {
        t.iter().fold(0, |acc, &i| acc * self.d + i)
    }

    /// Value on basis vectors.
    pub fn at(&self, t: &[usize]) -> &Vec<Q> {
        &self.values[self.index(t)]
    }

    /// Value with one argument replaced by a general vector.
    pub fn at_with(&self, t: &[usize], slot: usize, v: &[Q]) -> Vec<Q> {
        let mut acc = vec![Q::zero(); self.out];
        let mut u = t.to_vec();
        for (r, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            u[slot] = r;
            for (o, x) in self.at(&u).iter().enumerate() {
                acc[o] += c * x;
            }
        }
        acc
    }

    pub fn add_scaled(&mut self, other: &Dense, s: &Q) {
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += s * y;
            }
        }
    }
}

fn act(table: &Table, a: usize, v: &[Q]) -> Vec<Q> {
    let out = table[a].first().map_or(0, |r| r.len());
    let mut acc = vec![Q::zero(); out];
    for (b, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, x) in table[a][b].iter().enumerate() {
            acc[o] += c * x;
        }
    }
    acc
}

fn act_right(table: &Table, v: &[Q], a: usize) -> Vec<Q> {
    let out = table[0][a].len();
    let mut acc = vec![Q::zero(); out];
    for (b, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (o, x) in table[b][a].iter().enumerate() {
            acc[o] += c * x;
        }
    }
    acc
}

/// Textbook Hochschild coboundary for an ungraded algebra `mu` (on `V`)
/// acting on `W` by `left[a][w]` and `right[w][a]`:
/// `(δf)(a₁…a_{k+1}) = a₁f(a₂…) + Σᵢ(−1)ⁱ f(…aᵢa_{i+1}…) + (−1)^{k+1} f(a₁…a_k)a_{k+1}`.
pub fn hochschild_textbook(mu: &Table, left: &Table, right: &Table, f: &Dense) -> Dense {
    let (d, k) = (f.d, f.k);
    let mut out = Dense::zero(d, f.out, k + 1);
    for t in all_tuples(d, k + 1) {
        let mut acc = act(left, t[0], f.at(&t[1..]));
        for i in 1..=k {
            let prod = &mu[t[i - 1]][t[i]];
            let mut u: Vec<usize> = t[..i - 1].to_vec();
            u.push(0);
            u.extend_from_slice(&t[i + 1..]);
            let v = f.at_with(&u, i - 1, prod);
            let s = if i % 2 == 0 { q(1) } else { q(-1) };
            for (o, x) in v.iter().enumerate() {
                acc[o] += &s * x;
            }
        }
        let last = act_right(right, f.at(&t[..k]), t[k]);
        let s = if (k + 1) % 2 == 0 { q(1) } else { q(-1) };
        for (o, x) in last.iter().enumerate() {
            acc[o] += &s * x;
        }
        let idx = out.index(&t);
        out.values[idx] = acc;
    }
    out
}

/// Textbook Chevalley–Eilenberg coboundary (ungraded), `f` given on all tuples:
/// `(df)(x₀…x_k) = Σᵢ(−1)ⁱ xᵢ·f(…x̂ᵢ…) + Σ_{i<j}(−1)^{i+j} f([xᵢ,x_j], …x̂ᵢ…x̂_j…)`.
pub fn chevalley_textbook(bracket: &Table, action: &Table, f: &Dense) -> Dense {
    let (d, k) = (f.d, f.k);
    let mut out = Dense::zero(d, f.out, k + 1);
    for t in all_tuples(d, k + 1) {
        let mut acc = vec![Q::zero(); f.out];
        for i in 0..=k {
            let mut rest = t.clone();
            rest.remove(i);
            let v = act(action, t[i], f.at(&rest));
            let s = if i % 2 == 0 { q(1) } else { q(-1) };
            for (o, x) in v.iter().enumerate() {
                acc[o] += &s * x;
            }
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let mut rest: Vec<usize> = vec![0];
                rest.extend(t.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x));
                let v = f.at_with(&rest, 0, &bracket[t[i]][t[j]]);
                let s = if (i + j) % 2 == 0 { q(1) } else { q(-1) };
                for (o, x) in v.iter().enumerate() {
                    acc[o] += &s * x;
                }
            }
        }
        let idx = out.index(&t);
        out.values[idx] = acc;
    }
    out
}

/// Gerstenhaber composition `f ∘ g = Σᵢ (−1)^{i(q−1)} f(a₁…aᵢ, g(a_{i+1}…a_{i+q}), …)`
/// for `f` with `p` and `g` with `q` arguments (ungraded, `V → V`).
pub fn gerstenhaber_compose(f: &Dense, g: &Dense) -> Dense {
    let (p, qq, d) = (f.k, g.k, f.d);
    let n = p + qq - 1;
    let mut out = Dense::zero(d, d, n);
    if p == 0 {
        return out;
    }
    for t in all_tuples(d, n) {
        let mut acc = vec![Q::zero(); d];
        for i in 0..p {
            let inner = g.at(&t[i..i + qq]).clone();
            let mut u: Vec<usize> = t[..i].to_vec();
            u.push(0);
            u.extend_from_slice(&t[i + qq..]);
            let v = f.at_with(&u, i, &inner);
            let s = if (i * (qq + 1)) % 2 == 0 { q(1) } else { q(-1) };
            for (o, x) in v.iter().enumerate() {
                acc[o] += &s * x;
            }
        }
        let idx = out.index(&t);
        out.values[idx] = acc;
    }
    out
}

/// `[f,g]_G = f∘g − (−1)^{(p−1)(q−1)} g∘f`.
pub fn gerstenhaber_bracket(f: &Dense, g: &Dense) -> Dense {
    let mut out = gerstenhaber_compose(f, g);
    let e = (f.k as i64 - 1) * (g.k as i64 - 1);
    let s = if e.rem_euclid(2) == 0 { q(-1) } else { q(1) };
    out.add_scaled(&gerstenhaber_compose(g, f), &s);
    out
}

fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(Q::one(), |a, b| a * q(b))
}

/// Nijenhuis–Richardson insertion for alternating maps (ungraded):
/// `(i_K L)(x₀…) = 1/((k+1)! l!) Σ_σ sgn σ · L(K(x_{σ0}…x_{σk}), x_{σ(k+1)}, …)`,
/// where `K` has `k+1` and `L` has `l+1` arguments.
pub fn nr_insert(kk: &Dense, l: &Dense) -> Dense {
    let (k1, l1, d) = (kk.k, l.k, kk.d);
    let n = k1 + l1 - 1;
    let mut out = Dense::zero(d, d, n);
    if l1 == 0 {
        return out;
    }
    let perms = permutations(n);
    let norm = Q::one() / (factorial(k1) * factorial(l1 - 1));
    for t in all_tuples(d, n) {
        let mut acc = vec![Q::zero(); d];
        for p in &perms {
            let xs: Vec<usize> = p.iter().map(|&i| t[i]).collect();
            let inner = kk.at(&xs[..k1]).clone();
            let mut u = vec![0];
            u.extend_from_slice(&xs[k1..]);
            let v = l.at_with(&u, 0, &inner);
            let s = q(parity(p));
            for (o, x) in v.iter().enumerate() {
                acc[o] += &s * x;
            }
        }
        let idx = out.index(&t);
        out.values[idx] = acc.into_iter().map(|x| x * &norm).collect();
    }
    out
}

/// `[K,L]_NR = i_K L − (−1)^{kl} i_L K` with `k`, `l` the form degrees.
pub fn nr_bracket(kk: &Dense, l: &Dense) -> Dense {
    let mut out = nr_insert(kk, l);
    let e = (kk.k as i64 - 1) * (l.k as i64 - 1);
    let s = if e.rem_euclid(2) == 0 { q(-1) } else { q(1) };
    out.add_scaled(&nr_insert(l, kk), &s);
    out
}

pub fn is_zero(d: &Dense) -> bool {
    d.values.iter().all(|v| v.iter().all(|x| x.is_zero()))
}

pub fn abs_max(d: &Dense) -> Q {
    d.values.iter().flatten().map(|x| x.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a })
}
