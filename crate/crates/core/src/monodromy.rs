//! Typed words in the strip groupoid and their K-theory shadows.
//!
//! Words are stored in application order (first letter acts first).
//! Rendering and parsing use the `∘` convention, rightmost acting first,
//! with `.` for composition; `render` and `parse` are the single
//! conversion point between the two orders.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{for_length, HelixNumerics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Node {
    /// `p_j`, carrying the `j`-th algebra.
    Alg(i64),
    X,
    XPlus,
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Alg(j) => write!(f, "p_{j}"),
            Node::X => write!(f, "X"),
            Node::XPlus => write!(f, "X+"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Gen {
    /// Upper mutation `p_i → p_{i+1}`.
    MutFwd(i64),
    /// Lower mutation `p_{i+1} → p_i`; not the inverse of `MutFwd(i)`.
    MutBwd(i64),
    /// `β: p_j → p_{j+N}`.
    Beta(i64),
    /// Upper arrow `X → X⁺`.
    FlopUp,
    /// Lower arrow `X⁺ → X`.
    FlopDown,
    /// `X → p_0`.
    PsiLink,
    /// `X⁺ → p_1`.
    PsiPlusLink,
    /// `⊗ O_X(k)`, a loop at `X`.
    TensorX(i64),
    /// `⊗ O_{X⁺}(k)`, a loop at `X⁺`.
    TensorXPlus(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub gen: Gen,
    /// Formal inverse.
    pub inv: bool,
}

impl Letter {
    pub const fn new(gen: Gen) -> Self {
        Letter { gen, inv: false }
    }

    pub const fn inverse(self) -> Self {
        Letter { gen: self.gen, inv: !self.inv }
    }

    fn endpoints(self, period: i64) -> (Node, Node) {
        let (s, t) = match self.gen {
            Gen::MutFwd(i) => (Node::Alg(i), Node::Alg(i + 1)),
            Gen::MutBwd(i) => (Node::Alg(i + 1), Node::Alg(i)),
            Gen::Beta(j) => (Node::Alg(j), Node::Alg(j + period)),
            Gen::FlopUp => (Node::X, Node::XPlus),
            Gen::FlopDown => (Node::XPlus, Node::X),
            Gen::PsiLink => (Node::X, Node::Alg(0)),
            Gen::PsiPlusLink => (Node::XPlus, Node::Alg(1)),
            Gen::TensorX(_) => (Node::X, Node::X),
            Gen::TensorXPlus(_) => (Node::XPlus, Node::XPlus),
        };
        if self.inv {
            (t, s)
        } else {
            (s, t)
        }
    }

    pub fn is_algebraic(self) -> bool {
        matches!(self.gen, Gen::MutFwd(_) | Gen::MutBwd(_) | Gen::Beta(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match self.gen {
            Gen::MutFwd(i) => format!("phi_fwd({i})"),
            Gen::MutBwd(i) => format!("phi_bwd({i})"),
            Gen::Beta(0) => "beta".to_string(),
            Gen::Beta(j) => format!("beta({j})"),
            Gen::FlopUp => "flop_up".to_string(),
            Gen::FlopDown => "flop_down".to_string(),
            Gen::PsiLink => "psi".to_string(),
            Gen::PsiPlusLink => "psi_plus".to_string(),
            Gen::TensorX(k) => format!("tensor_x({k})"),
            Gen::TensorXPlus(k) => format!("tensor_xplus({k})"),
        };
        if self.inv {
            write!(f, "inv({body})")
        } else {
            f.write_str(&body)
        }
    }
}

pub const fn fwd(i: i64) -> Letter {
    Letter::new(Gen::MutFwd(i))
}

pub const fn bwd(i: i64) -> Letter {
    Letter::new(Gen::MutBwd(i))
}

/// A well-typed path in the strip groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctorWord {
    pub source: Node,
    pub target: Node,
    pub letters: Vec<Letter>,
    pub period: usize,
}

impl FunctorWord {
    pub fn identity(at: Node, period: usize) -> Self {
        FunctorWord { source: at, target: at, letters: vec![], period }
    }

    /// Types `letters` (application order) starting at `source`.
    pub fn new(source: Node, letters: Vec<Letter>, period: usize) -> Result<Self> {
        let mut cur = source;
        for (k, l) in letters.iter().enumerate() {
            let (s, t) = l.endpoints(period as i64);
            if s != cur {
                return Err(Error::IllTyped(format!("letter {k} `{l}` starts at {s}, previous ends at {cur}")));
            }
            cur = t;
        }
        Ok(FunctorWord { source, target: cur, letters, period })
    }

    /// Types `letters` starting at the source of the first letter.
    pub fn from_letters(letters: Vec<Letter>, period: usize) -> Result<Self> {
        let source = letters
            .first()
            .map(|l| l.endpoints(period as i64).0)
            .ok_or_else(|| Error::IllTyped("empty word has no inferable basepoint".into()))?;
        FunctorWord::new(source, letters, period)
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.source == self.target
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &FunctorWord) -> Result<Self> {
        if self.target != next.source {
            return Err(Error::IllTyped(format!(
                "cannot follow a path ending at {} by one starting at {}",
                self.target, next.source
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&next.letters);
        Ok(FunctorWord { source: self.source, target: next.target, letters, period: self.period })
    }

    pub fn inverse(&self) -> Self {
        FunctorWord {
            source: self.target,
            target: self.source,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
            period: self.period,
        }
    }

    pub fn power(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FunctorWord::identity(base.source, self.period);
        for _ in 0..k.unsigned_abs() {
            out = out.then(&base)?;
        }
        Ok(out)
    }

    /// Free reduction: cancels adjacent `x, x⁻¹` pairs (including `β, β⁻¹`).
    /// `MutFwd(i)` and `MutBwd(i)` never cancel.
    pub fn reduce(&self) -> Self {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match stack.last() {
                Some(&top) if top == l.inverse() => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        FunctorWord { source: self.source, target: self.target, letters: stack, period: self.period }
    }

    /// `link, self, link⁻¹` — conjugation moving the basepoint back along `link`.
    pub fn conjugate(&self, link: Letter) -> Result<Self> {
        let l = FunctorWord::new(link.endpoints(self.period as i64).0, vec![link], self.period)?;
        l.then(self)?.then(&l.inverse())
    }

    /// Inverse of `conjugate`: strips a leading `link` and trailing `link⁻¹`.
    pub fn strip_conjugation(&self, link: Letter) -> Option<Self> {
        let n = self.letters.len();
        if n >= 2 && self.letters[0] == link && self.letters[n - 1] == link.inverse() {
            FunctorWord::new(link.endpoints(self.period as i64).1, self.letters[1..n - 1].to_vec(), self.period).ok()
        } else {
            None
        }
    }

    /// Renders in `∘` order, e.g. `inv(beta).phi_fwd(1).phi_fwd(0)`.
    pub fn render(&self) -> String {
        if self.letters.is_empty() {
            return "identity".to_string();
        }
        self.letters.iter().rev().map(Letter::to_string).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for FunctorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// 2×2 integer matrix, row-major.
pub type Mat2 = [[i64; 2]; 2];

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];
pub const SWAP: Mat2 = [[0, 1], [1, 0]];

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub fn det(a: &Mat2) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn trace(a: &Mat2) -> i64 {
    a[0][0] + a[1][1]
}

/// Inverse over ℤ; `None` unless `det = ±1`.
pub fn mat_inv(a: &Mat2) -> Option<Mat2> {
    let d = det(a);
    if d.abs() != 1 {
        return None;
    }
    Some([[a[1][1] * d, -a[0][1] * d], [-a[1][0] * d, a[0][0] * d]])
}

/// The strip groupoid for a fixed length: word constructors and the
/// K-theory representation.
#[derive(Debug, Clone)]
pub struct Strip {
    pub numerics: HelixNumerics,
}

impl Strip {
    pub fn new(ell: i64) -> Result<Self> {
        Ok(Strip { numerics: for_length(ell)? })
    }

    pub fn ell(&self) -> u8 {
        self.numerics.ell
    }

    pub fn period(&self) -> usize {
        self.numerics.period
    }

    fn word(&self, source: Node, letters: Vec<Letter>) -> FunctorWord {
        FunctorWord::new(source, letters, self.period()).expect("constructed words are well typed")
    }

    fn n(&self) -> i64 {
        self.period() as i64
    }

    /// `κ_i = Φ_{i−1} ∘ ⋯ ∘ Φ_0`, a path `p_0 → p_i` of upper mutations.
    pub fn kappa(&self, i: i64) -> Result<FunctorWord> {
        if i < 0 {
            return Err(Error::IndexOutOfRange { index: i, lo: 0, hi: i64::MAX });
        }
        Ok(self.word(Node::Alg(0), (0..i).map(fwd).collect()))
    }

    /// `λ_i = Φ_{−1} ∘ ⋯ ∘ Φ_i` for `i < 0`, a path `p_i → p_0` of upper
    /// mutations.
    pub fn lambda(&self, i: i64) -> Result<FunctorWord> {
        if i >= 0 {
            return Err(Error::IndexOutOfRange { index: i, lo: i64::MIN, hi: -1 });
        }
        Ok(self.word(Node::Alg(i), (i..0).map(fwd).collect()))
    }

    /// `q_i = κ_i⁻¹ ∘ (Φ_i ∘ Φ_i) ∘ κ_i`, passing over then under the
    /// `i`-th puncture.
    pub fn loop_q(&self, i: i64) -> Result<FunctorWord> {
        if !(0..self.n()).contains(&i) {
            return Err(Error::IndexOutOfRange { index: i, lo: 0, hi: self.n() - 1 });
        }
        let k = self.kappa(i)?;
        let mid = self.word(Node::Alg(i), vec![fwd(i), bwd(i)]);
        k.then(&mid)?.then(&k.inverse())
    }

    /// `q_− = β⁻¹ ∘ (Φ_{N−1} ∘ ⋯ ∘ Φ_0)` along the upper arrows.
    pub fn loop_q_minus(&self) -> FunctorWord {
        let mut l: Vec<Letter> = (0..self.n()).map(fwd).collect();
        l.push(Letter::new(Gen::Beta(0)).inverse());
        self.word(Node::Alg(0), l)
    }

    /// `q_+ = (Φ_0 ∘ ⋯ ∘ Φ_{N−1}) ∘ β` along the lower arrows.
    pub fn loop_q_plus(&self) -> FunctorWord {
        let mut l = vec![Letter::new(Gen::Beta(0))];
        l.extend((0..self.n()).rev().map(bwd));
        self.word(Node::Alg(0), l)
    }

    /// `q_0⁻¹ ∘ q_+ ∘ q_−`, the sphere relation when `N = 1`.
    pub fn short_relation(&self) -> FunctorWord {
        let q0 = self.loop_q(0).expect("q_0 exists");
        self.loop_q_minus().then(&self.loop_q_plus()).and_then(|w| w.then(&q0.inverse())).expect("closed at p_0")
    }

    /// `q_{N−1}⁻¹ ∘ ⋯ ∘ q_0⁻¹ ∘ q_+ ∘ q_−`, the sphere relation for all `N`.
    pub fn sphere_relation(&self) -> FunctorWord {
        let mut w = self.loop_q_minus().then(&self.loop_q_plus()).expect("closed at p_0");
        for i in 0..self.n() {
            w = w.then(&self.loop_q(i).expect("in range").inverse()).expect("closed at p_0");
        }
        w
    }

    /// `M_i`: columns are the images of `[S_0]`, `[S_1]`.
    pub fn mutation_matrix(&self, i: i64) -> Mat2 {
        let n = self.numerics.n_at(i);
        if i.rem_euclid(2) == 0 {
            [[1, 0], [n, -1]]
        } else {
            [[-1, n], [0, 1]]
        }
    }

    pub fn beta_matrix(&self) -> Mat2 {
        if self.ell() == 1 {
            SWAP
        } else {
            IDENTITY
        }
    }

    fn letter_matrix(&self, l: Letter) -> Result<Mat2> {
        let m = match l.gen {
            Gen::MutFwd(i) | Gen::MutBwd(i) => self.mutation_matrix(i),
            Gen::Beta(_) => self.beta_matrix(),
            _ => return Err(Error::NonAlgebraic(l.to_string())),
        };
        if l.inv {
            Ok(mat_inv(&m).expect("letter matrices are unimodular"))
        } else {
            Ok(m)
        }
    }

    /// Product of letter matrices, last-applied on the left. Accepts
    /// open algebraic words.
    pub fn k_matrix(&self, w: &FunctorWord) -> Result<Mat2> {
        let mut acc = IDENTITY;
        for &l in &w.letters {
            acc = mat_mul(&self.letter_matrix(l)?, &acc);
        }
        Ok(acc)
    }

    /// As `k_matrix`, but rejects open words.
    pub fn k_matrix_closed(&self, w: &FunctorWord) -> Result<Mat2> {
        if !w.is_closed() {
            return Err(Error::OpenWord(format!("{} → {}", w.source, w.target)));
        }
        self.k_matrix(w)
    }

    /// Replaces flop letters by their algebraic equivalents
    /// (`F⁻¹` upper ≅ `Ψ_+⁻¹ Φ_0 Ψ`, lower ≅ `Ψ⁻¹ Φ_0 Ψ_+`) and `⊗O_X(k)` by
    /// the `Ψ`-conjugate of `q_−^{−k}`. `⊗O_{X⁺}(k)` is left as is.
    pub fn expand(&self, w: &FunctorWord) -> Result<FunctorWord> {
        let p = self.period();
        let psi = Letter::new(Gen::PsiLink);
        let psi_plus = Letter::new(Gen::PsiPlusLink);
        let mut out = FunctorWord::identity(w.source, p);
        for &l in &w.letters {
            let piece = match l.gen {
                Gen::FlopUp => FunctorWord::new(Node::X, vec![psi, fwd(0), psi_plus.inverse()], p)?,
                Gen::FlopDown => FunctorWord::new(Node::XPlus, vec![psi_plus, bwd(0), psi.inverse()], p)?,
                Gen::TensorX(k) => self.loop_q_minus().power(-k)?.conjugate(psi)?,
                _ => {
                    let base = Letter::new(l.gen);
                    FunctorWord::new(base.endpoints(p as i64).0, vec![base], p)?
                }
            };
            let piece = if l.inv { piece.inverse() } else { piece };
            out = out.then(&piece)?;
        }
        Ok(out)
    }

    /// The loop at `p_1` passing under the punctures down to `−i`, round
    /// the `−i`-th one, and back.
    pub fn lower_loop(&self, i: i64) -> FunctorWord {
        let down: Vec<Letter> = (-i + 1..=0).rev().map(bwd).collect();
        let path = self.word(Node::Alg(1), down);
        let mid = self.word(Node::Alg(-i + 1), vec![bwd(-i), fwd(-i)]);
        path.then(&mid).and_then(|w| w.then(&path.inverse())).expect("closed at p_1")
    }

    /// The two-basepoint loops `a`, `b_i`, `c_i`, `d` as words over the
    /// extended alphabet.
    pub fn two_basepoint_words(&self) -> TwoBasepointWords {
        let n = self.n();
        let psi = Letter::new(Gen::PsiLink);
        let psi_plus = Letter::new(Gen::PsiPlusLink);
        let up = Letter::new(Gen::FlopUp);
        let down = Letter::new(Gen::FlopDown);
        if n == 1 {
            return TwoBasepointWords {
                a: self.word(Node::X, vec![Letter::new(Gen::TensorX(1))]),
                b: vec![self.word(Node::X, vec![up, down])],
                c: vec![],
                d: self.word(Node::XPlus, vec![Letter::new(Gen::TensorXPlus(1))]),
            };
        }
        let h = n / 2;
        let b = (0..h)
            .map(|i| {
                if i == 0 {
                    return self.word(Node::X, vec![up, down]);
                }
                let mut l = vec![up, psi_plus];
                l.extend((1..i).map(fwd));
                l.extend([fwd(i), bwd(i)]);
                l.extend((1..i).rev().map(|j| fwd(j).inverse()));
                l.extend([psi_plus.inverse(), up.inverse()]);
                self.word(Node::X, l)
            })
            .collect();
        let c = (1..=h)
            .map(|i| {
                let mut l = vec![down, psi];
                l.extend((-i + 1..=-1).rev().map(bwd));
                l.extend([bwd(-i), fwd(-i)]);
                l.extend((-i + 1..=-1).map(|j| bwd(j).inverse()));
                l.extend([psi.inverse(), down.inverse()]);
                self.word(Node::XPlus, l)
            })
            .collect();
        let mut a = vec![up, psi_plus];
        a.extend((1..h).map(fwd));
        a.push(Letter::new(Gen::Beta(-h)).inverse());
        a.extend((-h..0).map(fwd));
        a.push(psi.inverse());
        let mut d = vec![down, psi];
        d.extend((-h..=-1).rev().map(bwd));
        d.push(Letter::new(Gen::Beta(-h)));
        d.extend((1..h).rev().map(bwd));
        d.push(psi_plus.inverse());
        TwoBasepointWords { a: self.word(Node::X, a), b, c, d: self.word(Node::XPlus, d) }
    }

    /// Mechanical checks tying the two-basepoint words to the one-basepoint
    /// loops.
    pub fn check_two_basepoint(&self) -> Result<Vec<String>> {
        let w = self.two_basepoint_words();
        let psi = Letter::new(Gen::PsiLink);
        let psi_plus = Letter::new(Gen::PsiPlusLink);
        let mut notes = Vec::new();
        let fail = |m: String| Err(Error::Invariant(m));
        for (name, word, base) in [("a", &w.a, Node::X), ("d", &w.d, Node::XPlus)]
            .into_iter()
            .chain(w.b.iter().map(|x| ("b", x, Node::X)))
            .chain(w.c.iter().map(|x| ("c", x, Node::XPlus)))
        {
            if word.source != base || word.target != base {
                return fail(format!("{name} is not a loop at {base}"));
            }
        }
        for (i, b) in w.b.iter().enumerate() {
            let got = self.expand(b)?.reduce();
            let want = self.loop_q(i as i64)?.conjugate(psi)?;
            if got != want {
                return fail(format!("b_{i} expands to {got}, expected {want}"));
            }
            notes.push(format!("b_{i} = Ψ-conjugate of q_{i}"));
        }
        for (k, c) in w.c.iter().enumerate() {
            let i = k as i64 + 1;
            let only_negative = c.letters.iter().all(|l| match l.gen {
                Gen::MutFwd(j) | Gen::MutBwd(j) => j < 0,
                _ => true,
            });
            if !only_negative {
                return fail(format!("c_{i} uses a non-negative mutation index"));
            }
            let got = self.expand(c)?.reduce();
            let want = self.lower_loop(i).conjugate(psi_plus)?;
            if got != want {
                return fail(format!("c_{i} expands to {got}, expected {want}"));
            }
            if self.k_matrix(&self.lower_loop(i))? != IDENTITY {
                return fail(format!("c_{i}: K-matrix is not the identity"));
            }
            notes.push(format!("c_{i} = Ψ+-conjugate of the lower loop round puncture -{i}"));
        }
        let a = self.expand(&w.a)?.reduce();
        if self.period() == 1 {
            let want = self.loop_q_minus().inverse().conjugate(psi)?;
            if a != want {
                return fail(format!("a expands to {a}, expected {want}"));
            }
            notes.push("a = Ψ-conjugate of q_- inverse".to_string());
        } else {
            let core = a.strip_conjugation(psi).ok_or_else(|| Error::Invariant(format!("a expands to {a}")))?;
            if self.k_matrix(&core)? != self.k_matrix(&self.loop_q_minus())? {
                return fail("K(a) differs from K(q_-)".to_string());
            }
            let d = self.expand(&w.d)?.reduce();
            let core = d.strip_conjugation(psi_plus).ok_or_else(|| Error::Invariant(format!("d expands to {d}")))?;
            let m0 = self.mutation_matrix(0);
            let want = mat_mul(&m0, &mat_mul(&self.k_matrix(&self.loop_q_plus())?, &m0));
            if self.k_matrix(&core)? != want {
                return fail("K(d) is not the p_1-conjugate of K(q_+)".to_string());
            }
            notes.push("K(a) = K(q_-); K(d) = M_0 K(q_+) M_0".to_string());
        }
        Ok(notes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoBasepointWords {
    /// Loop at `X` round the upper pole.
    pub a: FunctorWord,
    /// `b_i`, `i = 0..N/2`, loops at `X`.
    pub b: Vec<FunctorWord>,
    /// `c_i`, `i = 1..=N/2`, loops at `X⁺`.
    pub c: Vec<FunctorWord>,
    /// Loop at `X⁺` round the lower pole.
    pub d: FunctorWord,
}

/// Punctures of the moduli sphere: `N` on the equator plus the two poles.
pub fn puncture_count(ell: i64) -> Result<usize> {
    Ok(for_length(ell)?.period + 2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Expr {
    Atom(String, Option<i64>),
    Inv(Box<Expr>),
    /// Factors in `∘` order.
    Comp(Vec<Expr>),
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, m: &str) -> Result<T> {
        Err(Error::Parse(format!("{m} at offset {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn comp(&mut self) -> Result<Expr> {
        let mut parts = vec![self.factor()?];
        while self.eat(b'.') {
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { Expr::Comp(parts) })
    }

    fn factor(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii").to_string();
        if name.is_empty() {
            return self.err("expected a word");
        }
        if name == "inv" {
            if !self.eat(b'(') {
                return self.err("expected `(` after inv");
            }
            let e = self.comp()?;
            if !self.eat(b')') {
                return self.err("expected `)`");
            }
            return Ok(Expr::Inv(Box::new(e)));
        }
        let arg = if self.eat(b'(') {
            self.skip_ws();
            let st = self.pos;
            if self.s.get(self.pos) == Some(&b'-') {
                self.pos += 1;
            }
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let v: i64 = match std::str::from_utf8(&self.s[st..self.pos]).expect("ascii").parse() {
                Ok(v) => v,
                Err(_) => return self.err("expected an integer"),
            };
            if !self.eat(b')') {
                return self.err("expected `)`");
            }
            Some(v)
        } else {
            None
        };
        Ok(Expr::Atom(name, arg))
    }
}

impl Strip {
    /// Parses a word such as `inv(q0).qplus.qminus`. Factors compose with
    /// `.` in `∘` order. A bare `beta` is typed from its neighbours.
    pub fn parse(&self, text: &str) -> Result<FunctorWord> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let e = p.comp()?;
        p.skip_ws();
        if p.pos != text.len() {
            return p.err("unexpected trailing input");
        }
        self.eval(&e, None)
    }

    /// Evaluates `e`; `at` is the node the preceding factor ends at.
    fn eval(&self, e: &Expr, at: Option<Node>) -> Result<FunctorWord> {
        let p = self.period();
        let n = self.n();
        let one = |l: Letter| FunctorWord::from_letters(vec![l], p);
        let unknown = |s: &str| Err(Error::Parse(format!("unknown word `{s}`")));
        match e {
            Expr::Comp(parts) => {
                let mut acc: Option<FunctorWord> = None;
                for part in parts.iter().rev() {
                    let cur = acc.as_ref().map(|w| w.target).or(at);
                    let w = self.eval(part, cur)?;
                    acc = Some(match acc {
                        None => w,
                        Some(a) => a.then(&w)?,
                    });
                }
                Ok(acc.expect("non-empty composition"))
            }
            Expr::Inv(inner) => {
                if let Expr::Atom(name, None) = inner.as_ref() {
                    if name == "beta" {
                        let j = match at {
                            Some(Node::Alg(j)) => j - n,
                            None => 0,
                            Some(x) => return Err(Error::IllTyped(format!("inv(beta) at {x}"))),
                        };
                        return one(Letter::new(Gen::Beta(j)).inverse());
                    }
                }
                Ok(self.eval(inner, None)?.inverse())
            }
            Expr::Atom(name, arg) => {
                let need = |a: &Option<i64>| a.ok_or_else(|| Error::Parse(format!("`{name}` needs an argument")));
                match name.as_str() {
                    "identity" | "id" => Ok(FunctorWord::identity(at.unwrap_or(Node::Alg(0)), p)),
                    "qminus" => Ok(self.loop_q_minus()),
                    "qplus" => Ok(self.loop_q_plus()),
                    "phi_fwd" => one(fwd(need(arg)?)),
                    "phi_bwd" => one(bwd(need(arg)?)),
                    "beta" => {
                        let j = match (arg, at) {
                            (Some(j), _) => *j,
                            (None, Some(Node::Alg(j))) => j,
                            (None, None) => 0,
                            (None, Some(x)) => return Err(Error::IllTyped(format!("beta at {x}"))),
                        };
                        one(Letter::new(Gen::Beta(j)))
                    }
                    "kappa" => self.kappa(need(arg)?),
                    "lambda" => self.lambda(need(arg)?),
                    "flop_up" => one(Letter::new(Gen::FlopUp)),
                    "flop_down" => one(Letter::new(Gen::FlopDown)),
                    "psi" => one(Letter::new(Gen::PsiLink)),
                    "psi_plus" => one(Letter::new(Gen::PsiPlusLink)),
                    "tensor_x" => one(Letter::new(Gen::TensorX(need(arg)?))),
                    "tensor_xplus" => one(Letter::new(Gen::TensorXPlus(need(arg)?))),
                    s if s.starts_with('q') && arg.is_none() => match s[1..].parse::<i64>() {
                        Ok(i) => self.loop_q(i),
                        Err(_) => unknown(s),
                    },
                    s => unknown(s),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn typing_rejects_gaps() {
        assert!(FunctorWord::new(Node::Alg(0), vec![fwd(0), fwd(2)], 2).is_err());
        assert!(FunctorWord::new(Node::Alg(0), vec![fwd(0), bwd(0)], 2).is_ok());
    }

    #[test]
    fn parse_examples() {
        let s = Strip::new(2).unwrap();
        assert_eq!(s.parse("q0").unwrap(), s.loop_q(0).unwrap());
        assert_eq!(s.parse("inv(beta).phi_fwd(1).phi_fwd(0)").unwrap(), s.loop_q_minus());
        assert_eq!(s.parse("phi_bwd(0).phi_bwd(1).beta").unwrap(), s.loop_q_plus());
        assert!(s.parse("q7").is_err());
        assert!(s.parse("q0.").is_err());
        assert!(s.parse("frob").is_err());
        assert!(s.parse("phi_fwd(1).phi_fwd(3)").is_err());
    }

    #[test]
    fn render_examples() {
        let s = Strip::new(2).unwrap();
        assert_eq!(s.loop_q_minus().render(), "inv(beta).phi_fwd(1).phi_fwd(0)");
        assert_eq!(FunctorWord::identity(Node::Alg(0), 2).render(), "identity");
    }

    #[test]
    fn matrix_inverse() {
        let m = [[3, -1], [4, -1]];
        assert_eq!(mat_mul(&m, &mat_inv(&m).unwrap()), IDENTITY);
        assert_eq!(mat_inv(&[[2, 0], [0, 1]]), None);
    }
}
