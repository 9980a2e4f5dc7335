//! Left-invariant differential forms: the exterior algebra Λ^k 𝔤* with
//! wedge, evaluation, pullback, the Chevalley–Eilenberg differential and its
//! metric adjoint.
//!
//! Monomials use the determinant convention, so `e^{12}(e_1, e_2) = 1` and
//! `e^1 ∧ e^2 = e^{12}` without factorial factors.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::error::Error;
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, SparseSystem};
use crate::scalar::Scalar;

/// An alternating k-form in the basis `e^{i_1 … i_k}`.
///
/// Keys are strictly increasing 0-based index tuples; zero coefficients are
/// never stored, so structural equality is form equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

/// Sorts `idx` in place, returning the permutation sign, or `None` if an
/// index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(odd)
    }
}

/// All strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        KForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut f = KForm::zero(dim, 0);
        f.add_term(Vec::new(), c);
        f
    }

    /// `c · e^{i_1 … i_k}` from 1-based indices in any order.
    pub fn monomial(dim: usize, indices: &[usize], c: Scalar) -> Result<Self, Error> {
        let mut f = KForm::zero(dim, indices.len());
        let mut idx = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 || i > dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            idx.push(i - 1);
        }
        f.add_unsorted(idx, c);
        Ok(f)
    }

    /// The 1-form `Σ v_i e^i`.
    pub fn one_form(v: &[Scalar]) -> Self {
        let mut f = KForm::zero(v.len(), 1);
        for (i, c) in v.iter().enumerate() {
            f.add_term(vec![i], c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms with 0-based increasing keys.
    pub fn raw_terms(&self) -> impl Iterator<Item = (&[usize], &Scalar)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Terms with 1-based increasing indices.
    pub fn terms(&self) -> Vec<(Vec<usize>, Scalar)> {
        self.terms
            .iter()
            .map(|(k, v)| (k.iter().map(|i| i + 1).collect(), v.clone()))
            .collect()
    }

    /// Coefficient of `e^{I}` for 1-based `I` in any order (sign-adjusted).
    pub fn coefficient(&self, indices: &[usize]) -> Scalar {
        let mut idx: Vec<usize> = indices.iter().map(|i| i.wrapping_sub(1)).collect();
        match sort_with_sign(&mut idx) {
            None => Scalar::zero(),
            Some(odd) => {
                let c = self.terms.get(&idx).cloned().unwrap_or_default();
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Value on 0-based basis vectors `e_{idx…}`.
    pub fn on_basis(&self, idx: &[usize]) -> Scalar {
        let mut v = idx.to_vec();
        match sort_with_sign(&mut v) {
            None => Scalar::zero(),
            Some(odd) => match self.terms.get(&v) {
                None => Scalar::zero(),
                Some(c) if odd => -c,
                Some(c) => c.clone(),
            },
        }
    }

    fn add_term(&mut self, key: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn add_unsorted(&mut self, mut key: Vec<usize>, c: Scalar) {
        if let Some(odd) = sort_with_sign(&mut key) {
            self.add_term(key, if odd { -c } else { c });
        }
    }

    pub fn scale(&self, s: &Scalar) -> KForm {
        let mut out = KForm::zero(self.dim, self.degree);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * s);
        }
        out
    }

    fn check_same_space(&self, other: &KForm) {
        assert_eq!(self.dim, other.dim, "forms on different algebras");
        assert_eq!(self.degree, other.degree, "forms of different degree");
    }

    /// `α ∧ β`. Degrees beyond `dim` give the zero form.
    pub fn wedge(&self, other: &KForm) -> KForm {
        assert_eq!(self.dim, other.dim, "forms on different algebras");
        let mut out = KForm::zero(self.dim, self.degree + other.degree);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut key = Vec::with_capacity(a.len() + b.len());
                key.extend_from_slice(a);
                key.extend_from_slice(b);
                out.add_unsorted(key, ca * cb);
            }
        }
        out
    }

    /// `α(v_1, …, v_k)` for coordinate vectors.
    pub fn evaluate(&self, vectors: &[Vec<Scalar>]) -> Result<Scalar, Error> {
        if vectors.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: vectors.len(),
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (key, c) in &self.terms {
            let m = Matrix::from_fn(self.degree, self.degree, |r, col| {
                vectors[col][key[r]].clone()
            });
            acc += &(c * &m.determinant()?);
        }
        Ok(acc)
    }

    /// The form whose coefficient on `e^{I}` is `f(I)` for every increasing
    /// 0-based `I`. `f` is assumed alternating; check separately if needed.
    pub fn from_basis_values(
        dim: usize,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> Scalar,
    ) -> Self {
        let mut out = KForm::zero(dim, degree);
        for key in subsets(dim, degree) {
            let c = f(&key);
            out.add_term(key, c);
        }
        out
    }

    /// `F^*α`, i.e. `(X_1, …, X_k) ↦ α(F X_1, …, F X_k)`.
    pub fn pullback(&self, f: &Matrix) -> KForm {
        let n = self.dim;
        let rows: Vec<KForm> = (0..n).map(|i| KForm::one_form(f.row(i))).collect();
        let mut out = KForm::zero(n, self.degree);
        for (key, c) in &self.terms {
            let mut acc = KForm::constant(n, c.clone());
            for &i in key {
                acc = acc.wedge(&rows[i]);
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Re-indexes through a 0-based map into a space of dimension `new_dim`.
    pub fn reindex(&self, new_dim: usize, map: impl Fn(usize) -> usize) -> KForm {
        let mut out = KForm::zero(new_dim, self.degree);
        for (key, c) in &self.terms {
            out.add_unsorted(key.iter().map(|&i| map(i)).collect(), c.clone());
        }
        out
    }

    /// Extends to a larger algebra whose first `dim` basis vectors are ours.
    pub fn embed(&self, new_dim: usize) -> KForm {
        assert!(new_dim >= self.dim);
        self.reindex(new_dim, |i| i)
    }

    /// Chevalley–Eilenberg differential. On 1-forms `dα(X, Y) = −α([X, Y])`;
    /// in general it is the unique antiderivation extending that rule.
    pub fn ce_differential(&self, g: &LieAlgebra) -> KForm {
        assert_eq!(self.dim, g.dim(), "form and algebra dimensions differ");
        let n = self.dim;
        let mut out = KForm::zero(n, self.degree + 1);
        if self.degree >= n {
            return out;
        }
        let de = basis_differentials(g);
        for (key, c) in &self.terms {
            for (m, &i) in key.iter().enumerate() {
                for ((p, q), s) in &de[i] {
                    let mut nk = Vec::with_capacity(key.len() + 1);
                    nk.extend_from_slice(&key[..m]);
                    nk.push(*p);
                    nk.push(*q);
                    nk.extend_from_slice(&key[m + 1..]);
                    let v = c * s;
                    out.add_unsorted(nk, if m % 2 == 1 { -v } else { v });
                }
            }
        }
        out
    }

    /// Inner product induced by the inverse Gram matrix `ginv`:
    /// `⟨e^I, e^J⟩ = det(ginv[I, J])`.
    pub fn inner_product(&self, other: &KForm, ginv: &Matrix) -> Scalar {
        self.check_same_space(other);
        let diagonal = is_diagonal(ginv);
        let mut acc = Scalar::zero();
        for (a, ca) in &self.terms {
            if diagonal {
                if let Some(cb) = other.terms.get(a) {
                    let w: Scalar = a.iter().fold(Scalar::one(), |p, &i| &p * ginv.get(i, i));
                    acc += &(&(ca * cb) * &w);
                }
                continue;
            }
            for (b, cb) in &other.terms {
                let m = Matrix::from_fn(a.len(), b.len(), |r, c| ginv.get(a[r], b[c]).clone());
                let d = m.determinant().expect("square minor");
                if !d.is_zero() {
                    acc += &(&(ca * cb) * &d);
                }
            }
        }
        acc
    }

    /// The metric adjoint `d*` of [`KForm::ce_differential`]:
    /// `⟨d*β, α⟩ = ⟨β, dα⟩` for every `(k−1)`-form `α`.
    pub fn codifferential(&self, g: &LieAlgebra, ginv: &Matrix) -> Result<KForm, Error> {
        let n = self.dim;
        if self.degree == 0 {
            return Ok(KForm::zero(n, 0));
        }
        let k = self.degree - 1;
        let basis = subsets(n, k);
        let rhs: Vec<Scalar> = basis
            .iter()
            .map(|key| {
                let mut e = KForm::zero(n, k);
                e.add_term(key.clone(), Scalar::one());
                self.inner_product(&e.ce_differential(g), ginv)
            })
            .collect();
        let mut out = KForm::zero(n, k);
        if is_diagonal(ginv) {
            for (key, b) in basis.into_iter().zip(rhs) {
                if b.is_zero() {
                    continue;
                }
                let w: Scalar = key.iter().fold(Scalar::one(), |p, &i| &p * ginv.get(i, i));
                out.add_term(key, &b * &w.try_inv()?);
            }
            return Ok(out);
        }
        let m = basis.len();
        let mut sys = SparseSystem::new(m);
        for (r, a) in basis.iter().enumerate() {
            let row = basis.iter().enumerate().filter_map(|(c, b)| {
                let minor = Matrix::from_fn(k, k, |x, y| ginv.get(a[x], b[y]).clone());
                let d = minor.determinant().expect("square minor");
                (!d.is_zero()).then_some((c, d))
            });
            sys.push(row, rhs[r].clone());
        }
        let red = sys.solve()?;
        let x = match red.particular {
            Some(x) if red.kernel.is_empty() => x,
            _ => return Err(Error::Singular),
        };
        for (key, c) in basis.into_iter().zip(x) {
            out.add_term(key, c);
        }
        Ok(out)
    }

    /// Parses sums like `2*e^{256} - 1/2*e^{1,10} + (0+1/2*sqrt2)*e^{3}`.
    /// A bare scalar is a 0-form; `0` needs the degree from the caller.
    pub fn parse(text: &str, dim: usize, degree: usize) -> Result<KForm, Error> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || Error::FormSyntax(text.to_string());
        if s.is_empty() {
            return Err(err());
        }
        if s == "0" {
            return Ok(KForm::zero(dim, degree));
        }
        let mut out = KForm::zero(dim, degree);
        let mut depth = 0i32;
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' | b'{' => depth += 1,
                b')' | b'}' => depth -= 1,
                b'+' | b'-' if depth == 0 && i > 0 && bytes[i - 1] != b'*' => {
                    pieces.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        pieces.push(&s[start..]);
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'+') => (false, &piece[1..]),
                Some(b'-') => (true, &piece[1..]),
                _ => (false, piece),
            };
            let (coef, idx) = match body.find("e^{") {
                None => (parse_coefficient(body).ok_or_else(err)?, Vec::new()),
                Some(p) => {
                    let coef = if p == 0 {
                        Scalar::one()
                    } else {
                        let c = body[..p].strip_suffix('*').ok_or_else(err)?;
                        parse_coefficient(c).ok_or_else(err)?
                    };
                    let inner = body[p + 3..].strip_suffix('}').ok_or_else(err)?;
                    (coef, parse_indices(inner, dim).ok_or_else(err)?)
                }
            };
            if idx.len() != degree {
                return Err(err());
            }
            out.add_unsorted(idx, if neg { -coef } else { coef });
        }
        Ok(out)
    }
}

fn parse_coefficient(s: &str) -> Option<Scalar> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    inner.parse().ok()
}

fn parse_indices(s: &str, dim: usize) -> Option<Vec<usize>> {
    let raw: Vec<usize> = if s.contains(',') {
        s.split(',')
            .map(|t| t.parse().ok())
            .collect::<Option<_>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()?
    };
    if raw.is_empty() || raw.iter().any(|&i| i == 0 || i > dim) {
        return None;
    }
    Some(raw.into_iter().map(|i| i - 1).collect())
}

fn is_diagonal(m: &Matrix) -> bool {
    (0..m.rows()).all(|r| (0..m.cols()).all(|c| r == c || m.get(r, c).is_zero()))
}

/// `d e^k = −Σ_{p<q} c^k_{pq} e^{pq}` for every `k`, 0-based.
fn basis_differentials(g: &LieAlgebra) -> Vec<Vec<((usize, usize), Scalar)>> {
    let n = g.dim();
    let mut de = vec![Vec::new(); n];
    for p in 0..n {
        for q in p + 1..n {
            for (k, c) in g.terms(p, q) {
                de[*k].push(((p, q), -c));
            }
        }
    }
    de
}

impl Add for &KForm {
    type Output = KForm;
    fn add(self, rhs: &KForm) -> KForm {
        self.check_same_space(rhs);
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &KForm {
    type Output = KForm;
    fn sub(self, rhs: &KForm) -> KForm {
        self + &(-rhs)
    }
}

impl Neg for &KForm {
    type Output = KForm;
    fn neg(self) -> KForm {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Writes a coefficient in front of a monomial; `None` for ±1.
fn coefficient_prefix(c: &Scalar) -> String {
    if c.is_rational() {
        alloc::format!("{c}*")
    } else {
        alloc::format!("({c})*")
    }
}

impl fmt::Display for KForm {
    /// Monomial notation, e.g. `2*e^{256} - 1/2*e^{1,10}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (key, c)) in self.terms.iter().enumerate() {
            let neg = c.is_rational() && !c.is_positive();
            let mag = if neg { -c } else { c.clone() };
            if n == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if key.is_empty() {
                if mag.is_rational() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
                continue;
            }
            if !mag.is_one() {
                f.write_str(&coefficient_prefix(&mag))?;
            }
            f.write_str("e^{")?;
            let wide = key.iter().any(|&i| i + 1 >= 10);
            for (m, i) in key.iter().enumerate() {
                if wide && m > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm<{}; {}>({})", self.dim, self.degree, self)
    }
}
