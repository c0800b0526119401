//! Linear codes over prime fields and the orthogonal arrays they form.
//!
//! A [`LinearCode`] is given by a full-rank `k × n` generator matrix over
//! `GF(p)`. Codewords are enumerated in lexicographic order of their
//! messages `(m_1, …, m_k)` with `m_1` most significant, so codeword `i`
//! encodes the base-`p` digits of `i`. Because the code is linear, the
//! Hamming distance between codewords `i` and `j` is the weight of the
//! codeword whose message is the digit-wise difference, which is how
//! [`distance_class_scheme`] builds its relations.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::hamming::ksd_class;
use crate::scheme::{self, AssociationScheme, SchemeError};
use crate::DEFAULT_SIZE_CAP;

/// A vector over `GF(p)` with symbols in `0..p`.
pub type Word = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("modulus {0} is not a prime below 256")]
    NotPrime(u32),
    #[error("entry ({row},{col}) = {value} is not a symbol mod {p}")]
    BadEntry {
        row: usize,
        col: usize,
        value: u32,
        p: u8,
    },
    #[error("generator rows have unequal length: row {row} has {found}, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator has rank {rank} < {k} rows")]
    RankDeficient { rank: usize, k: usize },
    #[error("size cap exceeded: {size} words requested, cap is {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("distance {0} occurs between codewords but is in no class")]
    UncoveredDistance(usize),
    #[error("invalid distance classes: {0}")]
    InvalidClasses(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

pub type Result<T, E = CodeError> = std::result::Result<T, E>;

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn mul_mod(a: u8, b: u8, p: u8) -> u8 {
    ((u32::from(a) * u32::from(b)) % u32::from(p)) as u8
}

fn add_mod(a: u8, b: u8, p: u8) -> u8 {
    ((u32::from(a) + u32::from(b)) % u32::from(p)) as u8
}

fn neg_mod(a: u8, p: u8) -> u8 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

fn inv_mod(a: u8, p: u8) -> u8 {
    // a^(p-2) by Fermat
    let mut result = 1u8;
    let mut base = a;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

pub fn weight(w: &[u8]) -> usize {
    w.iter().filter(|&&x| x != 0).count()
}

pub fn hamming_distance(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Reduced row-echelon form over `GF(p)` with leftmost pivots; zero rows
/// are dropped.
fn rref_mod(rows: &[Word], n: usize, p: u8) -> (Vec<Word>, Vec<usize>) {
    let mut a: Vec<Word> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = neg_mod(row[c], p);
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = add_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

/// A linear `[n, k]` code over `GF(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearCode {
    p: u8,
    n: usize,
    generator: Vec<Word>,
}

impl LinearCode {
    /// Validates symbols and full row rank.
    pub fn new(p: u32, n: usize, generator: Vec<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) || p > 255 {
            return Err(CodeError::NotPrime(p));
        }
        let p8 = p as u8;
        let mut rows = Vec::with_capacity(generator.len());
        for (i, row) in generator.iter().enumerate() {
            if row.len() != n {
                return Err(CodeError::RaggedRows {
                    row: i,
                    expected: n,
                    found: row.len(),
                });
            }
            let mut w = Vec::with_capacity(n);
            for (j, &x) in row.iter().enumerate() {
                if x >= p {
                    return Err(CodeError::BadEntry {
                        row: i,
                        col: j,
                        value: x,
                        p: p8,
                    });
                }
                w.push(x as u8);
            }
            rows.push(w);
        }
        let (_, pivots) = rref_mod(&rows, n, p8);
        if pivots.len() != rows.len() {
            return Err(CodeError::RankDeficient {
                rank: pivots.len(),
                k: rows.len(),
            });
        }
        Ok(Self {
            p: p8,
            n,
            generator: rows,
        })
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Word] {
        &self.generator
    }

    /// `p^k`, saturating.
    pub fn size(&self) -> usize {
        (self.p as usize)
            .checked_pow(self.dimension() as u32)
            .unwrap_or(usize::MAX)
    }

    /// The base-`p` digits of `index`, most significant first.
    pub fn message(&self, mut index: usize) -> Word {
        let mut m = vec![0u8; self.dimension()];
        for slot in m.iter_mut().rev() {
            *slot = (index % self.p as usize) as u8;
            index /= self.p as usize;
        }
        m
    }

    pub fn message_index(&self, message: &[u8]) -> usize {
        message
            .iter()
            .fold(0usize, |acc, &d| acc * self.p as usize + d as usize)
    }

    pub fn encode(&self, message: &[u8]) -> Word {
        let mut w = vec![0u8; self.n];
        for (&m, row) in message.iter().zip(&self.generator) {
            if m == 0 {
                continue;
            }
            for (x, &g) in w.iter_mut().zip(row) {
                *x = add_mod(*x, mul_mod(m, g, self.p), self.p);
            }
        }
        w
    }

    fn check_size(&self, cap: usize) -> Result<usize> {
        let size = self.size();
        if size > cap {
            return Err(CodeError::SizeCap { size, cap });
        }
        Ok(size)
    }

    /// Canonical text form: `p n k`, then one line of `n` digits per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.p, self.n, self.dimension());
        for row in &self.generator {
            out.push_str(&format_word(row));
            out.push('\n');
        }
        out
    }

    /// Parses the text form. Rows may be written as packed digits or as
    /// whitespace-separated symbols.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(CodeError::Parse {
            line: 1,
            message: "missing `p n k` header".into(),
        })?;
        let nums = parse_header(hl, header)?;
        let (p, n, k) = (nums[0], nums[1] as usize, nums[2] as usize);
        let mut rows = Vec::with_capacity(k);
        for _ in 0..k {
            let (line, l) = lines.next().ok_or(CodeError::Parse {
                line: hl + rows.len() + 1,
                message: format!("expected {k} generator rows, found {}", rows.len()),
            })?;
            rows.push(parse_word(line, l, n)?);
        }
        if let Some((line, _)) = lines.next() {
            return Err(CodeError::Parse {
                line,
                message: "unexpected trailing content".into(),
            });
        }
        Self::new(p, n, rows)
    }
}

fn parse_header(line: usize, header: &str) -> Result<Vec<u32>> {
    let nums: Vec<u32> = header
        .split_whitespace()
        .map(|t| t.parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CodeError::Parse {
            line,
            message: format!("bad header: {e}"),
        })?;
    if nums.len() != 3 {
        return Err(CodeError::Parse {
            line,
            message: format!("header needs 3 numbers, found {}", nums.len()),
        });
    }
    Ok(nums)
}

fn parse_word(line: usize, text: &str, n: usize) -> Result<Vec<u32>> {
    let symbols: Vec<u32> = if text.contains(char::is_whitespace) {
        text.split_whitespace()
            .map(|t| t.parse::<u32>().ok())
            .collect::<Option<_>>()
    } else {
        text.chars().map(|c| c.to_digit(10)).collect::<Option<_>>()
    }
    .ok_or_else(|| CodeError::Parse {
        line,
        message: format!("`{text}` is not a row of symbols"),
    })?;
    if symbols.len() != n {
        return Err(CodeError::Parse {
            line,
            message: format!("row has {} symbols, expected {n}", symbols.len()),
        });
    }
    Ok(symbols)
}

/// Packed digits when every symbol is a single digit, space-separated
/// otherwise.
fn format_word(w: &[u8]) -> String {
    if w.iter().all(|&x| x < 10) {
        w.iter().map(|x| char::from(b'0' + x)).collect()
    } else {
        w.iter().map(ToString::to_string).join(" ")
    }
}

/// All codewords in message order, under the default size cap.
pub fn codewords(c: &LinearCode) -> Result<Vec<Word>> {
    codewords_with_cap(c, DEFAULT_SIZE_CAP)
}

pub fn codewords_with_cap(c: &LinearCode, cap: usize) -> Result<Vec<Word>> {
    let size = c.check_size(cap)?;
    Ok((0..size).map(|i| c.encode(&c.message(i))).collect())
}

/// Number of codewords of each weight `0..=n`.
pub fn weight_distribution(c: &LinearCode) -> Result<Vec<u64>> {
    let mut dist = vec![0u64; c.length() + 1];
    for w in codewords(c)? {
        dist[weight(&w)] += 1;
    }
    Ok(dist)
}

/// The dual code, generated by a null-space basis of `G` read off its
/// reduced row-echelon form: one vector per free column in ascending
/// order, scaled so its first nonzero entry is 1.
pub fn dual(c: &LinearCode) -> LinearCode {
    let p = c.p;
    let n = c.n;
    let (r, pivots) = rref_mod(&c.generator, n, p);
    let mut basis = Vec::with_capacity(n - pivots.len());
    for free in (0..n).filter(|col| !pivots.contains(col)) {
        let mut v = vec![0u8; n];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = neg_mod(r[row][free], p);
        }
        let lead = *v.iter().find(|&&x| x != 0).expect("v[free] = 1");
        let inv = inv_mod(lead, p);
        basis.push(v.iter().map(|&x| mul_mod(x, inv, p)).collect());
    }
    LinearCode {
        p,
        n,
        generator: basis,
    }
}

/// Minimum nonzero weight of the dual code; `None` when the dual is zero.
pub fn dual_distance(c: &LinearCode) -> Result<Option<usize>> {
    let d = dual(c);
    Ok(codewords(&d)?
        .iter()
        .map(|w| weight(w))
        .filter(|&w| w > 0)
        .min())
}

/// True when both generators span the same subspace.
pub fn same_code(a: &LinearCode, b: &LinearCode) -> bool {
    a.p == b.p
        && a.n == b.n
        && rref_mod(&a.generator, a.n, a.p).0 == rref_mod(&b.generator, b.n, b.p).0
}

/// An `N × m` array over `q` symbols whose rows are the runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalArrayView {
    runs: Vec<Word>,
    m: usize,
    q: u8,
}

impl OrthogonalArrayView {
    pub fn new(runs: Vec<Word>, q: u8) -> Result<Self> {
        if q == 0 {
            return Err(CodeError::InvalidParameter("q must be positive".into()));
        }
        let m = runs.first().map_or(0, Vec::len);
        for (i, r) in runs.iter().enumerate() {
            if r.len() != m {
                return Err(CodeError::RaggedRows {
                    row: i,
                    expected: m,
                    found: r.len(),
                });
            }
            if let Some(j) = r.iter().position(|&x| x >= q) {
                return Err(CodeError::BadEntry {
                    row: i,
                    col: j,
                    value: u32::from(r[j]),
                    p: q,
                });
            }
        }
        Ok(Self { runs, m, q })
    }

    /// The codewords of `c` as runs.
    pub fn from_code(c: &LinearCode) -> Result<Self> {
        Self::new(codewords(c)?, c.p)
    }

    pub fn runs(&self) -> &[Word] {
        &self.runs
    }

    pub fn n_runs(&self) -> usize {
        self.runs.len()
    }

    pub fn factors(&self) -> usize {
        self.m
    }

    pub fn levels(&self) -> u8 {
        self.q
    }

    /// `N m q`, then one line per run.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} {} {}", self.n_runs(), self.m, self.q).expect("write to String");
        for r in &self.runs {
            out.push_str(&format_word(r));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or(CodeError::Parse {
            line: 1,
            message: "missing `N m q` header".into(),
        })?;
        let nums = parse_header(hl, header)?;
        let (big_n, m, q) = (nums[0] as usize, nums[1] as usize, nums[2]);
        if q == 0 || q > 255 {
            return Err(CodeError::Parse {
                line: hl,
                message: format!("q = {q} out of range"),
            });
        }
        let mut runs = Vec::with_capacity(big_n);
        for (line, l) in lines {
            let w = parse_word(line, l, m)?;
            let run = w
                .into_iter()
                .map(u8::try_from)
                .collect::<std::result::Result<_, _>>();
            runs.push(run.map_err(|_| CodeError::Parse {
                line,
                message: "symbol out of range".into(),
            })?);
        }
        if runs.len() != big_n {
            return Err(CodeError::Parse {
                line: hl,
                message: format!("header says {big_n} runs, found {}", runs.len()),
            });
        }
        Self::new(runs, q as u8)
    }
}

/// Largest `t ≤ m` such that every `N × t` subarray contains each of the
/// `q^t` tuples equally often, with that multiplicity `λ = N / q^t`.
pub fn oa_strength(a: &OrthogonalArrayView) -> (usize, usize) {
    let big_n = a.n_runs();
    let q = a.q as usize;
    let mut best = (0, big_n);
    for t in 1..=a.m {
        let Some(cells) = q.checked_pow(t as u32) else {
            break;
        };
        if !big_n.is_multiple_of(cells) {
            break;
        }
        let lambda = big_n / cells;
        let uniform = (0..a.m).combinations(t).all(|cols| {
            let mut counts = vec![0usize; cells];
            for r in &a.runs {
                let idx = cols.iter().fold(0usize, |acc, &c| acc * q + r[c] as usize);
                counts[idx] += 1;
            }
            counts.iter().all(|&x| x == lambda)
        });
        if !uniform {
            break;
        }
        best = (t, lambda);
    }
    best
}

/// The `[2l+3, 2l+1]` ternary code `[I | X]` where the last two columns of
/// rows 1, 2, 3 are `(1,1)`, `(0,1)`, `(1,0)` and zero below.
pub fn family_code(l: usize) -> Result<LinearCode> {
    if l == 0 {
        return Err(CodeError::InvalidParameter(
            "family code needs l >= 1".into(),
        ));
    }
    let k = 2 * l + 1;
    let tail = [[1, 1], [0, 1], [1, 0]];
    let rows = (0..k)
        .map(|i| {
            let mut r = vec![0u32; k + 2];
            r[i] = 1;
            if let Some(t) = tail.get(i) {
                r[k] = t[0];
                r[k + 1] = t[1];
            }
            r
        })
        .collect();
    LinearCode::new(3, k + 2, rows)
}

/// Validates a labelled partition of distances and returns
/// `class_of[d]` for `d` in `0..=n` (`usize::MAX` where uncovered).
fn distance_classes(classes: &[Vec<usize>], n: usize) -> Result<Vec<usize>> {
    let mut class_of = vec![usize::MAX; n + 1];
    class_of[0] = 0;
    for (t, part) in classes.iter().enumerate() {
        if part.is_empty() {
            return Err(CodeError::InvalidClasses(format!(
                "class {} is empty",
                t + 1
            )));
        }
        for &d in part {
            if d == 0 || d > n {
                return Err(CodeError::InvalidClasses(format!(
                    "distance {d} not in 1..={n}"
                )));
            }
            if class_of[d] != usize::MAX {
                return Err(CodeError::InvalidClasses(format!(
                    "distance {d} listed twice"
                )));
            }
            class_of[d] = t + 1;
        }
    }
    Ok(class_of)
}

fn realized(class_of: &[usize], weights: impl IntoIterator<Item = usize>) -> Result<()> {
    let seen: BTreeSet<usize> = weights.into_iter().collect();
    match seen.into_iter().find(|&w| class_of[w] == usize::MAX) {
        Some(w) => Err(CodeError::UncoveredDistance(w)),
        None => Ok(()),
    }
}

/// Relations on codewords by the class of their Hamming distance, built
/// from the weight of `x − y`, then certified as a scheme.
pub fn distance_class_scheme(c: &LinearCode, classes: &[Vec<usize>]) -> Result<AssociationScheme> {
    let relation = distance_class_relation(c, classes)?;
    let size = c.size();
    Ok(scheme::from_relation(size, classes.len() + 1, &relation)?)
}

/// Class index of every ordered pair of codewords, row-major in message
/// order, using linearity.
pub fn distance_class_relation(c: &LinearCode, classes: &[Vec<usize>]) -> Result<Vec<usize>> {
    let class_of = distance_classes(classes, c.length())?;
    let words = codewords(c)?;
    let weights: Vec<usize> = words.iter().map(|w| weight(w)).collect();
    realized(&class_of, weights.iter().copied())?;
    let messages: Vec<Word> = (0..words.len()).map(|i| c.message(i)).collect();
    let p = c.p();
    let mut relation = Vec::with_capacity(words.len() * words.len());
    let mut diff = vec![0u8; c.dimension()];
    for mx in &messages {
        for my in &messages {
            for ((d, &a), &b) in diff.iter_mut().zip(mx).zip(my) {
                *d = add_mod(a, neg_mod(b, p), p);
            }
            relation.push(class_of[weights[c.message_index(&diff)]]);
        }
    }
    Ok(relation)
}

/// Class index of every ordered pair of runs by direct distance
/// computation; valid for any array, linear or not.
pub fn runs_distance_relation(runs: &[Word], classes: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = runs.first().map_or(0, Vec::len);
    let class_of = distance_classes(classes, n)?;
    let mut relation = Vec::with_capacity(runs.len() * runs.len());
    for x in runs {
        for y in runs {
            let d = hamming_distance(x, y);
            if x != y && d == 0 {
                return Err(CodeError::InvalidParameter("repeated run".into()));
            }
            if class_of[d] == usize::MAX {
                return Err(CodeError::UncoveredDistance(d));
            }
            relation.push(class_of[d]);
        }
    }
    Ok(relation)
}

/// Scheme on the runs of an array by distance classes.
pub fn runs_distance_scheme(runs: &[Word], classes: &[Vec<usize>]) -> Result<AssociationScheme> {
    let relation = runs_distance_relation(runs, classes)?;
    Ok(scheme::from_relation(
        runs.len(),
        classes.len() + 1,
        &relation,
    )?)
}

/// The distances `1..=n` grouped by residue mod 3 into classes 1, 2, 3.
pub fn mod3_classes(n: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); 3];
    for d in 1..=n {
        parts[ksd_class(d) - 1].push(d);
    }
    parts
}

/// Sizes of `M_0 = {0}` and `M_1, M_2, M_3`, the nonzero codewords with
/// weight `≡ 1, 2, 0 (mod 3)`.
pub fn weight_class_sizes(c: &LinearCode) -> Result<[usize; 4]> {
    let mut sizes = [0usize; 4];
    for w in codewords(c)? {
        sizes[ksd_class(weight(&w))] += 1;
    }
    Ok(sizes)
}

/// Images of the basis `e_1, …, e_{2l+1}` of `GF(3)^{2l+1}` as coefficient
/// vectors over the rows `r_1, …, r_{2l+1}` of [`family_code`]:
/// `e_1 ↦ r_1 + r_2 + r_3`, `e_2 ↦ r_2`, `e_3 ↦ r_3`, and for `i > 3`
/// `e_i ↦ r_i + r_{i+1}` when `i` is even, `r_{i−1} + 2 r_i` when odd.
pub fn ksd_phi_images(l: usize) -> Vec<Word> {
    let k = 2 * l + 1;
    (1..=k)
        .map(|i| {
            let mut v = vec![0u8; k];
            let mut set = |j: usize, x: u8| v[j - 1] = x;
            match i {
                1 => {
                    set(1, 1);
                    set(2, 1);
                    set(3, 1);
                }
                2 | 3 => set(i, 1),
                _ if i % 2 == 0 => {
                    set(i, 1);
                    set(i + 1, 1);
                }
                _ => {
                    set(i - 1, 1);
                    set(i, 2);
                }
            }
            v
        })
        .collect()
}

/// Checks that the linear map given by `images` from `GF(3)^{2l+1}` onto
/// [`family_code`]`(l)` is bijective and sends nonzero words of weight
/// `≡ 1, 2, 0 (mod 3)` to codewords of weight `≡ 2, 1, 0 (mod 3)`.
pub fn ksd_isomorphism_check_with(l: usize, images: &[Word]) -> Result<bool> {
    let target = family_code(l)?;
    let k = target.dimension();
    if images.len() != k
        || images
            .iter()
            .any(|v| v.len() != k || v.iter().any(|&x| x >= 3))
    {
        return Ok(false);
    }
    if rref_mod(images, k, 3).1.len() != k {
        return Ok(false);
    }
    let size = target.check_size(DEFAULT_SIZE_CAP)?;
    const SWAP: [usize; 4] = [0, 2, 1, 3];
    for idx in 1..size {
        let x = target.message(idx);
        let mut coeff = vec![0u8; k];
        for (&a, img) in x.iter().zip(images) {
            if a == 0 {
                continue;
            }
            for (cv, &g) in coeff.iter_mut().zip(img) {
                *cv = add_mod(*cv, mul_mod(a, g, 3), 3);
            }
        }
        let y = target.encode(&coeff);
        if ksd_class(weight(&y)) != SWAP[ksd_class(weight(&x))] {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn ksd_isomorphism_check(l: usize) -> Result<bool> {
    ksd_isomorphism_check_with(l, &ksd_phi_images(l))
}
