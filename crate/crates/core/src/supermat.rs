//! Supermatrices in the standard format, form preservers, and the central
//! extension `as` of `spe(4)` with its spinor representations.

use crate::error::{Error, Result};
use crate::linalg::{kernel, SparseVec};
use crate::rational::Q;
use crate::superpoly::Parity;

/// Ordered parities of the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Format(Vec<Parity>);

impl Format {
    pub fn new(parities: Vec<Parity>) -> Result<Format> {
        if parities.is_empty() {
            return Err(Error::Format("empty format".into()));
        }
        Ok(Format(parities))
    }

    /// `p` even vectors followed by `q` odd ones.
    pub fn standard(p: usize, q: usize) -> Format {
        let mut v = vec![Parity::Even; p];
        v.extend(std::iter::repeat(Parity::Odd).take(q));
        Format(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.0[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.0
    }

    fn entry_parity(&self, i: usize, j: usize) -> Parity {
        self.0[i] + self.0[j]
    }
}

/// A parity-homogeneous supermatrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    format: Format,
    entries: Vec<Q>,
    parity: Parity,
}

impl SuperMatrix {
    pub fn zero(format: &Format, parity: Parity) -> SuperMatrix {
        let n = format.len();
        SuperMatrix {
            format: format.clone(),
            entries: vec![Q::zero(); n * n],
            parity,
        }
    }

    pub fn identity(format: &Format) -> SuperMatrix {
        let mut m = SuperMatrix::zero(format, Parity::Even);
        for i in 0..format.len() {
            m.entries[i * format.len() + i] = Q::one();
        }
        m
    }

    /// The matrix unit `E_ij`, of parity `p_i + p_j`.
    pub fn unit(format: &Format, i: usize, j: usize) -> SuperMatrix {
        let mut m = SuperMatrix::zero(format, format.entry_parity(i, j));
        m.entries[i * format.len() + j] = Q::one();
        m
    }

    /// Builds a matrix from rows; the parity is read off the nonzero
    /// entries (zero matrices are even).
    pub fn from_rows(format: &Format, rows: &[Vec<Q>]) -> Result<SuperMatrix> {
        let n = format.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Format(format!("expected a {n}x{n} matrix")));
        }
        let mut parity = None;
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let p = format.entry_parity(i, j);
                match parity {
                    None => parity = Some(p),
                    Some(q) if q != p => return Err(Error::Inhomogeneous),
                    _ => {}
                }
            }
        }
        Ok(SuperMatrix {
            format: format.clone(),
            entries: rows.iter().flatten().cloned().collect(),
            parity: parity.unwrap_or(Parity::Even),
        })
    }

    pub fn from_ints(format: &Format, rows: &[&[i64]]) -> Result<SuperMatrix> {
        let rows: Vec<Vec<Q>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_int(x)).collect())
            .collect();
        SuperMatrix::from_rows(format, &rows)
    }

    pub fn format(&self) -> &Format {
        &self.format
    }

    pub fn size(&self) -> usize {
        self.format.len()
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.size() + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Q::is_zero)
    }

    fn check(&self, o: &SuperMatrix) -> Result<()> {
        if self.format != o.format {
            return Err(Error::Format("formats differ".into()));
        }
        Ok(())
    }

    fn zip(&self, o: &SuperMatrix, s: &Q) -> Result<SuperMatrix> {
        self.check(o)?;
        let parity = if self.is_zero() {
            o.parity
        } else if o.is_zero() || o.parity == self.parity {
            self.parity
        } else {
            return Err(Error::Inhomogeneous);
        };
        Ok(SuperMatrix {
            format: self.format.clone(),
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a + &(b * s))
                .collect(),
            parity,
        })
    }

    pub fn add(&self, o: &SuperMatrix) -> Result<SuperMatrix> {
        self.zip(o, &Q::one())
    }

    pub fn sub(&self, o: &SuperMatrix) -> Result<SuperMatrix> {
        self.zip(o, &Q::from_int(-1))
    }

    pub fn scale(&self, s: &Q) -> SuperMatrix {
        SuperMatrix {
            format: self.format.clone(),
            entries: self.entries.iter().map(|a| a * s).collect(),
            parity: self.parity,
        }
    }

    /// Ordinary matrix product.
    pub fn mul(&self, o: &SuperMatrix) -> Result<SuperMatrix> {
        self.check(o)?;
        let n = self.size();
        let mut entries = vec![Q::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        Ok(SuperMatrix {
            format: self.format.clone(),
            entries,
            parity: self.parity + o.parity,
        })
    }

    /// `[X, Y] = XY − (−1)^{p(X)p(Y)} YX`.
    pub fn bracket(&self, o: &SuperMatrix) -> Result<SuperMatrix> {
        let xy = self.mul(o)?;
        let yx = o.mul(self)?;
        xy.zip(&yx, &-Q::sign(self.parity.both_odd(o.parity)))
    }

    /// `Σ (−1)^{p_i} A_ii`.
    pub fn supertrace(&self) -> Q {
        let mut s = Q::zero();
        for i in 0..self.size() {
            s += &(self.get(i, i) * &Q::sign(self.format.parity(i).is_odd()));
        }
        s
    }

    /// `tr B` for `[[A, B], [B, A]]` in `q(n)`.
    pub fn queertrace(&self) -> Result<Q> {
        let n = self.size() / 2;
        if self.format != Format::standard(n, n) || !self.is_queer() {
            return Err(Error::Format("not an element of q(n)".into()));
        }
        Ok((0..n).fold(Q::zero(), |acc, i| &acc + self.get(i, n + i)))
    }

    /// Whether the matrix has the block shape `[[A, B], [B, A]]`.
    pub fn is_queer(&self) -> bool {
        let n = self.size() / 2;
        if self.format != Format::standard(n, n) {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.get(i, j) == self.get(n + i, n + j) && self.get(i, n + j) == self.get(n + i, j)
            })
        })
    }

    /// `(A^{st})_ij = (−1)^{(p_i+p_j)(p_i+p(A))} A_ji`.
    pub fn supertranspose(&self) -> SuperMatrix {
        let n = self.size();
        let mut entries = vec![Q::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let odd = self.format.entry_parity(i, j).both_odd(self.format.parity(i) + self.parity);
                entries[i * n + j] = &self.entries[j * n + i] * &Q::sign(odd);
            }
        }
        SuperMatrix {
            format: self.format.clone(),
            entries,
            parity: self.parity,
        }
    }

    /// The `(r0..r1) × (c0..c1)` block as plain rows.
    pub fn block(&self, r: std::ops::Range<usize>, c: std::ops::Range<usize>) -> Vec<Vec<Q>> {
        r.map(|i| c.clone().map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    fn coords(&self) -> SparseVec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }
}

/// `X^{st} B + (−1)^{p(X)p(B)} B X = 0`.
pub fn preserves_form(x: &SuperMatrix, b: &SuperMatrix) -> Result<bool> {
    Ok(form_defect(x, b)?.is_zero())
}

fn form_defect(x: &SuperMatrix, b: &SuperMatrix) -> Result<SuperMatrix> {
    let l = x.supertranspose().mul(b)?;
    let r = b.mul(x)?;
    l.zip(&r, &Q::sign(x.parity.both_odd(b.parity)))
}

/// Basis of the parity-`p` part of `aut(B)`.
pub fn aut_basis(b: &SuperMatrix, p: Parity) -> Result<Vec<SuperMatrix>> {
    let f = b.format().clone();
    let n = f.len();
    let mut units = Vec::new();
    let mut images = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if f.entry_parity(i, j) == p {
                let u = SuperMatrix::unit(&f, i, j);
                images.push(form_defect(&u, b)?.coords());
                units.push(u);
            }
        }
    }
    Ok(kernel(&images)
        .into_iter()
        .map(|comb| {
            let mut m = SuperMatrix::zero(&f, p);
            for (k, c) in comb {
                m = m.zip(&units[k], &c).expect("same format and parity");
            }
            m
        })
        .collect())
}

fn square(n: usize, f: impl Fn(usize, usize) -> i64) -> Vec<Vec<Q>> {
    (0..n).map(|i| (0..n).map(|j| Q::from_int(f(i, j))).collect()).collect()
}

/// `J_2n = [[0, 1_n], [−1_n, 0]]`.
fn j2n(n: usize) -> Vec<Vec<Q>> {
    square(2 * n, |i, j| {
        if j == i + n {
            1
        } else if i == j + n {
            -1
        } else {
            0
        }
    })
}

/// `B_ev(m|2n)` with antidiagonal orthogonal block.
pub fn b_ev(m: usize, n: usize) -> SuperMatrix {
    even_form(m, n, true)
}

/// `B'_ev(m|2n)` with identity orthogonal block.
pub fn b_ev_prime(m: usize, n: usize) -> SuperMatrix {
    even_form(m, n, false)
}

fn even_form(m: usize, n: usize, anti: bool) -> SuperMatrix {
    let f = Format::standard(m, 2 * n);
    let j = j2n(n);
    let mut out = SuperMatrix::zero(&f, Parity::Even);
    let size = m + 2 * n;
    for i in 0..m {
        let col = if anti { m - 1 - i } else { i };
        out.entries[i * size + col] = Q::one();
    }
    for (i, r) in j.iter().enumerate() {
        for (k, c) in r.iter().enumerate() {
            out.entries[(m + i) * size + m + k] = c.clone();
        }
    }
    out
}

/// The odd supersymmetric form `J_2n` on `n|n`.
pub fn b_odd(n: usize) -> SuperMatrix {
    let rows = j2n(n);
    SuperMatrix::from_rows(&Format::standard(n, n), &rows).expect("well-formed")
}

/// The odd superskew form `Π_2n = [[0, 1_n], [1_n, 0]]`.
pub fn pi_2n(n: usize) -> SuperMatrix {
    let rows = square(2 * n, |i, j| i32::from(j == i + n || i == j + n) as i64);
    SuperMatrix::from_rows(&Format::standard(n, n), &rows).expect("well-formed")
}

/// The Hodge-type involution on skew 4×4 matrices: `c̃_ij = c_kl` for
/// `(1234) ↦ (ijkl)` even.
pub fn tilde(c: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    if c.len() != 4 || c.iter().any(|r| r.len() != 4) {
        return Err(Error::Format("tilde needs a 4x4 matrix".into()));
    }
    for i in 0..4 {
        for j in 0..4 {
            if c[i][j] != -&c[j][i] {
                return Err(Error::Format("tilde needs a skew matrix".into()));
            }
        }
    }
    let mut out = vec![vec![Q::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let rest: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
            let (k, l) = if perm_even(&[i, j, rest[0], rest[1]]) {
                (rest[0], rest[1])
            } else {
                (rest[1], rest[0])
            };
            // coefficient of c_ij in c is c[i][j] (for i<j); it maps to c_kl
            if i < j {
                out[k][l] += &c[i][j];
                out[l][k] -= &c[i][j];
            }
        }
    }
    Ok(out)
}

fn perm_even(p: &[usize]) -> bool {
    let mut inv = 0;
    for a in 0..p.len() {
        for b in a + 1..p.len() {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    inv % 2 == 0
}

fn trace_product(a: &[Vec<Q>], b: &[Vec<Q>]) -> Q {
    let mut s = Q::zero();
    for (i, r) in a.iter().enumerate() {
        for (k, x) in r.iter().enumerate() {
            s += &(x * &b[k][i]);
        }
    }
    s
}

/// An element `x + d·z` of the central extension `as` of `spe(4)`, with
/// `spe(4)` in the shape `[[a, b], [c, −aᵗ]]`, `b` symmetric, `c` skew and
/// `tr a = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsElement {
    x: SuperMatrix,
    d: Q,
}

impl AsElement {
    pub fn new(x: SuperMatrix, d: Q) -> Result<AsElement> {
        if x.format != Format::standard(4, 4) {
            return Err(Error::Format("as lives in gl(4|4)".into()));
        }
        let a = x.block(0..4, 0..4);
        let b = x.block(0..4, 4..8);
        let c = x.block(4..8, 0..4);
        let e = x.block(4..8, 4..8);
        for i in 0..4 {
            for j in 0..4 {
                if e[i][j] != -&a[j][i] || b[i][j] != b[j][i] || c[i][j] != -&c[j][i] {
                    return Err(Error::Format("not in pe(4)".into()));
                }
            }
        }
        if !x.supertrace().is_zero() {
            return Err(Error::Format("supertrace must vanish".into()));
        }
        Ok(AsElement { x, d })
    }

    /// The central element `z`.
    pub fn central() -> AsElement {
        AsElement {
            x: SuperMatrix::zero(&Format::standard(4, 4), Parity::Even),
            d: Q::one(),
        }
    }

    pub fn matrix(&self) -> &SuperMatrix {
        &self.x
    }

    pub fn center(&self) -> &Q {
        &self.d
    }

    pub fn parity(&self) -> Parity {
        if self.d.is_zero() {
            self.x.parity
        } else {
            Parity::Even
        }
    }

    pub fn add(&self, o: &AsElement) -> Result<AsElement> {
        Ok(AsElement {
            x: self.x.add(&o.x)?,
            d: &self.d + &o.d,
        })
    }

    pub fn scale(&self, s: &Q) -> AsElement {
        AsElement {
            x: self.x.scale(s),
            d: &self.d * s,
        }
    }

    fn c_block(&self) -> Vec<Vec<Q>> {
        self.x.block(4..8, 0..4)
    }

    /// Matrix bracket plus `tr(c·c̃′)·z`.
    pub fn bracket(&self, o: &AsElement) -> Result<AsElement> {
        let x = self.x.bracket(&o.x)?;
        let d = trace_product(&self.c_block(), &tilde(&o.c_block())?);
        Ok(AsElement { x, d })
    }

    /// Coordinates: 64 matrix entries followed by the central coefficient.
    pub fn coords(&self) -> SparseVec<usize> {
        let mut v = self.x.coords();
        if !self.d.is_zero() {
            v.push((64, self.d.clone()));
        }
        v
    }
}

/// The spinor representation `T_λ` in `gl(4|4)`: the odd upper block is
/// shifted by `2λ·c̃` and `z ↦ λ·1_{4|4}`.
pub fn spinor_rep(lambda: &Q, a: &AsElement) -> Result<SuperMatrix> {
    let c = a.c_block();
    let ct = tilde(&c)?;
    let mut m = a.x.clone();
    let shift = lambda * &Q::from_int(2);
    for i in 0..4 {
        for j in 0..4 {
            let idx = i * 8 + 4 + j;
            m.entries[idx] = &m.entries[idx] + &(&ct[i][j] * &shift);
        }
    }
    let id = SuperMatrix::identity(&Format::standard(4, 4)).scale(&(lambda * &a.d));
    if m.is_zero() {
        return Ok(id);
    }
    if id.is_zero() {
        return Ok(m);
    }
    m.add(&id)
}

/// Basis of `spe(4)`: `a` traceless, `b` symmetric, `c` skew.
pub fn spe4_basis() -> Vec<SuperMatrix> {
    let f = Format::standard(4, 4);
    let mut out = Vec::new();
    let mut push = |entries: &[(usize, usize, i64)], p: Parity| {
        let mut m = SuperMatrix::zero(&f, p);
        for &(i, j, c) in entries {
            m.entries[i * 8 + j] += &Q::from_int(c);
        }
        out.push(m);
    };
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                push(&[(i, j, 1), (4 + j, 4 + i, -1)], Parity::Even);
            } else if i < 3 {
                push(&[(i, i, 1), (4 + i, 4 + i, -1), (i + 1, i + 1, -1), (5 + i, 5 + i, 1)], Parity::Even);
            }
        }
    }
    for i in 0..4 {
        for j in i..4 {
            if i == j {
                push(&[(i, 4 + i, 1)], Parity::Odd);
            } else {
                push(&[(i, 4 + j, 1), (j, 4 + i, 1)], Parity::Odd);
            }
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            push(&[(4 + i, j, 1), (4 + j, i, -1)], Parity::Odd);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skew(i: usize, j: usize) -> Vec<Vec<Q>> {
        let mut c = vec![vec![Q::zero(); 4]; 4];
        c[i][j] = Q::one();
        c[j][i] = Q::from_int(-1);
        c
    }

    #[test]
    fn traces() {
        let f = Format::standard(1, 1);
        assert!(SuperMatrix::identity(&f).supertrace().is_zero());
        assert_eq!(SuperMatrix::unit(&f, 0, 0).supertrace(), Q::one());
        let q = Format::standard(2, 2);
        let m = SuperMatrix::from_ints(&q, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        assert_eq!(m.queertrace().unwrap(), Q::from_int(2));
    }

    #[test]
    fn supertranspose_signs() {
        let f = Format::standard(1, 1);
        let e12 = SuperMatrix::unit(&f, 0, 1);
        let st = e12.supertranspose();
        // (i,j) = (2,1): (p_i+p_j)(p_i+p(A)) = 1·(1+1) = 0
        assert_eq!(st, SuperMatrix::unit(&f, 1, 0));
        let e21 = SuperMatrix::unit(&f, 1, 0);
        assert_eq!(e21.supertranspose(), SuperMatrix::unit(&f, 0, 1).scale(&Q::from_int(-1)));
        let d = SuperMatrix::from_ints(&Format::standard(2, 0), &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(d.supertranspose(), SuperMatrix::from_ints(&Format::standard(2, 0), &[&[1, 3], &[2, 4]]).unwrap());
    }

    #[test]
    fn form_preservers() {
        let b = b_ev(0, 1);
        let x = SuperMatrix::from_ints(&Format::standard(0, 2), &[&[1, 0], &[0, -1]]).unwrap();
        assert!(preserves_form(&x, &b).unwrap());
        let y = SuperMatrix::from_ints(&Format::standard(0, 2), &[&[1, 0], &[0, 1]]).unwrap();
        assert!(!preserves_form(&y, &b).unwrap());
        assert!(preserves_form(&SuperMatrix::zero(&Format::standard(0, 2), Parity::Even), &b).unwrap());
        // osp(1|2) has superdimension 3|2
        let b12 = b_ev(1, 1);
        assert_eq!(aut_basis(&b12, Parity::Even).unwrap().len(), 3);
        assert_eq!(aut_basis(&b12, Parity::Odd).unwrap().len(), 2);
        // pe(n) has superdimension n²|n²
        assert_eq!(aut_basis(&b_odd(3), Parity::Even).unwrap().len(), 9);
        assert_eq!(aut_basis(&b_odd(3), Parity::Odd).unwrap().len(), 9);
    }

    #[test]
    fn tilde_values() {
        assert_eq!(tilde(&skew(0, 1)).unwrap(), skew(2, 3));
        assert_eq!(tilde(&skew(0, 2)).unwrap(), skew(3, 1));
        for i in 0..4 {
            for j in i + 1..4 {
                let c = skew(i, j);
                assert_eq!(tilde(&tilde(&c).unwrap()).unwrap(), c);
            }
        }
    }

    #[test]
    fn as_bracket_cocycle() {
        let basis = spe4_basis();
        assert_eq!(basis.len(), 15 + 16);
        let z = AsElement::central();
        let x = AsElement::new(basis[20].clone(), Q::zero()).unwrap();
        assert!(z.bracket(&x).unwrap().coords().is_empty());
        // c12 against c34
        let f = Format::standard(4, 4);
        let mut m1 = SuperMatrix::zero(&f, Parity::Odd);
        m1.entries[4 * 8 + 1] = Q::one();
        m1.entries[5 * 8] = Q::from_int(-1);
        let mut m2 = SuperMatrix::zero(&f, Parity::Odd);
        m2.entries[6 * 8 + 3] = Q::one();
        m2.entries[7 * 8 + 2] = Q::from_int(-1);
        let a = AsElement::new(m1, Q::zero()).unwrap();
        let b = AsElement::new(m2, Q::zero()).unwrap();
        let br = a.bracket(&b).unwrap();
        assert!(br.matrix().is_zero());
        assert_eq!(br.center(), &Q::from_int(-2));
    }

    #[test]
    fn spinor_rep_basics() {
        let lam = Q::from_int(3);
        let t = spinor_rep(&lam, &AsElement::central()).unwrap();
        assert_eq!(t, SuperMatrix::identity(&Format::standard(4, 4)).scale(&lam));
        let x = AsElement::new(spe4_basis()[3].clone(), Q::zero()).unwrap();
        assert_eq!(&spinor_rep(&Q::zero(), &x).unwrap(), x.matrix());
    }
}
