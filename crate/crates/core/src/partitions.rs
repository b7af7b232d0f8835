//! Integer partitions, centraliser orders, s-reduction, and cycle patterns
//! for conjugacy classes of Young subgroups.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{cap_check, DpError, Result};
use crate::modarith::PrimeCtx;
use crate::perm::Perm;

/// A partition, parts stored in weakly decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `1^k`.
    pub fn ones(k: u32) -> Self {
        Partition {
            parts: vec![1; k as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&x| x == i).count() as u32
    }

    /// Pairs `(i, m_i)` with `m_i > 0`, increasing in `i`.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &x in self.parts.iter().rev() {
            match out.last_mut() {
                Some((i, m)) if *i == x => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(['+', ',', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|e| DpError::Parse(format!("{s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join("+"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// Partitions of `r`, largest parts first (reverse lexicographic order).
/// `max_ones` keeps only partitions with strictly fewer than `max_ones` ones.
pub fn enumerate_partitions(
    r: u32,
    max_length: Option<usize>,
    max_ones: Option<u32>,
) -> Vec<Partition> {
    fn rec(
        rest: u32,
        max_part: u32,
        cur: &mut Vec<u32>,
        max_length: Option<usize>,
        out: &mut Vec<Partition>,
    ) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if max_length.is_some_and(|l| cur.len() >= l) {
            return;
        }
        for part in (1..=max_part.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, max_length, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, r, &mut Vec::new(), max_length, &mut out);
    if let Some(k) = max_ones {
        out.retain(|l| l.multiplicity(1) < k);
    }
    out
}

/// `(z_lambda, u_lambda) = (prod i^{m_i} m_i!, prod m_i!)`.
pub fn centraliser_orders(lambda: &Partition) -> (u128, u128) {
    let mut z: u128 = 1;
    let mut u: u128 = 1;
    for (i, m) in lambda.multiplicities() {
        let fact: u128 = (1..=m as u128).product();
        z *= (i as u128).pow(m) * fact;
        u *= fact;
    }
    (z, u)
}

/// Replaces `p^s` ones by `p^{s-1}` parts equal to `p` until fewer than
/// `p^s` ones remain.
pub fn s_reduce(lambda: &Partition, ctx: PrimeCtx, s: u32) -> Partition {
    assert!(s >= 1);
    let q = ctx.pow_p(s);
    let ones = lambda.multiplicity(1) as u64;
    if ones < q {
        return lambda.clone();
    }
    let rounds = ones / q;
    let mut parts: Vec<u32> = lambda.parts.iter().copied().filter(|&x| x != 1).collect();
    let new_p = rounds * ctx.pow_p(s - 1);
    parts.extend(std::iter::repeat_n(ctx.p(), new_p as usize));
    parts.extend(std::iter::repeat_n(1, (ones % q) as usize));
    Partition::new(parts)
}

pub fn is_s_reduced(lambda: &Partition, ctx: PrimeCtx, s: u32) -> bool {
    (lambda.multiplicity(1) as u64) < ctx.pow_p(s)
}

/// Partitions of `r` grouped by their s-reduced form. Classes are ordered
/// by the enumeration position of the reduced partition; members keep
/// enumeration order.
pub fn s_equivalence_classes(
    r: u32,
    ctx: PrimeCtx,
    s: u32,
    max_length: Option<usize>,
) -> Vec<Vec<Partition>> {
    let all = enumerate_partitions(r, max_length, None);
    let order: BTreeMap<Partition, usize> = enumerate_partitions(r, None, None)
        .into_iter()
        .enumerate()
        .map(|(k, l)| (l, k))
        .collect();
    let mut classes: BTreeMap<usize, Vec<Partition>> = BTreeMap::new();
    for lambda in all {
        let key = order[&s_reduce(&lambda, ctx, s)];
        classes.entry(key).or_default().push(lambda);
    }
    classes.into_values().collect()
}

/// A cyclic word over `{1..m}`, stored as its least rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclePattern {
    word: Vec<u8>,
}

impl CyclePattern {
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `Content(b)`: occurrences of each letter `1..=m`.
    pub fn content(&self, m: usize) -> Vec<u32> {
        let mut c = vec![0u32; m];
        for &x in &self.word {
            c[x as usize - 1] += 1;
        }
        c
    }

    pub fn single(letter: u8) -> Self {
        CyclePattern { word: vec![letter] }
    }

    pub fn power(&self, l: usize) -> CyclePattern {
        CyclePattern {
            word: self.word.repeat(l),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(']');
        let word = t
            .split([',', ' '])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<u8>().map_err(|e| DpError::Parse(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        canonical_pattern(&word)
    }
}

impl fmt::Display for CyclePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl fmt::Debug for CyclePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Least rotation of a nonempty word with letters `>= 1`.
pub fn canonical_pattern(word: &[u8]) -> Result<CyclePattern> {
    if word.is_empty() {
        return Err(DpError::InvalidArgument("empty cycle pattern".into()));
    }
    if word.contains(&0) {
        return Err(DpError::InvalidArgument("pattern letters start at 1".into()));
    }
    let t = word.len();
    let best = (0..t)
        .map(|k| {
            let mut w = word[k..].to_vec();
            w.extend_from_slice(&word[..k]);
            w
        })
        .min()
        .unwrap();
    Ok(CyclePattern { word: best })
}

/// `b = root^l` with `root` primitive and `l` maximal.
pub fn primitive_decompose(b: &CyclePattern) -> (CyclePattern, usize) {
    let t = b.word.len();
    for d in 1..=t {
        if t.is_multiple_of(d) && (0..t).all(|k| b.word[k] == b.word[k % d]) {
            return (
                CyclePattern {
                    word: b.word[..d].to_vec(),
                },
                t / d,
            );
        }
    }
    unreachable!()
}

pub fn is_primitive(b: &CyclePattern) -> bool {
    primitive_decompose(b).1 == 1
}

/// A function from primitive cycle patterns to partitions with finite support.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiPartition {
    assignment: BTreeMap<CyclePattern, Partition>,
}

impl MultiPartition {
    pub fn new(assignment: BTreeMap<CyclePattern, Partition>) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for (b, l) in assignment {
            if !is_primitive(&b) {
                return Err(DpError::InvalidArgument(format!(
                    "pattern {b} is not primitive"
                )));
            }
            if !l.is_empty() {
                clean.insert(b, l);
            }
        }
        Ok(MultiPartition { assignment: clean })
    }

    pub fn get(&self, b: &CyclePattern) -> Option<&Partition> {
        self.assignment.get(b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CyclePattern, &Partition)> {
        self.assignment.iter()
    }

    pub fn content(&self, m: usize) -> Vec<u32> {
        let mut c = vec![0u32; m];
        for (b, l) in &self.assignment {
            for (k, x) in b.content(m).into_iter().enumerate() {
                c[k] += x * l.size();
            }
        }
        c
    }

    /// `(z, u)`: products of the per-pattern centraliser orders.
    pub fn centraliser_orders(&self) -> (u128, u128) {
        self.assignment.values().fold((1, 1), |(z, u), l| {
            let (zl, ul) = centraliser_orders(l);
            (z * zl, u * ul)
        })
    }

    /// Patterns ordered longest first, then lexicographically.
    fn display_order(&self) -> Vec<(&CyclePattern, &Partition)> {
        let mut v: Vec<_> = self.assignment.iter().collect();
        v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(b.0)));
        v
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| DpError::Parse(format!("expected {{...}} in {t:?}")))?;
        let mut map = BTreeMap::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let close = rest
                .find(']')
                .ok_or_else(|| DpError::Parse(format!("unclosed pattern in {t:?}")))?;
            let b = CyclePattern::parse(&rest[..=close])?;
            let after = rest[close + 1..].trim_start();
            let after = after
                .strip_prefix(':')
                .ok_or_else(|| DpError::Parse(format!("expected ':' in {t:?}")))?;
            let end = after.find('[').unwrap_or(after.len());
            let lambda_text = after[..end].trim().trim_end_matches(',');
            map.insert(b, Partition::parse(lambda_text)?);
            rest = after[end..].trim();
        }
        MultiPartition::new(map)
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (b, l)) in self.display_order().into_iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}: {l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A composition `alpha` of `r` with its consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungData {
    alpha: Vec<u32>,
    offsets: Vec<usize>,
}

impl YoungData {
    pub fn new(alpha: Vec<u32>) -> Self {
        let mut offsets = Vec::with_capacity(alpha.len() + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for &a in &alpha {
            acc += a as usize;
            offsets.push(acc);
        }
        YoungData { alpha, offsets }
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn r(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn m(&self) -> usize {
        self.alpha.len()
    }

    /// Block `i` (1-based) as a 0-based half-open range of positions.
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i - 1]..self.offsets[i]
    }

    /// Block index (1-based) of 0-based position `j`.
    pub fn zeta(&self, j: usize) -> usize {
        (1..=self.m())
            .find(|&i| self.block(i).contains(&j))
            .expect("position out of range")
    }

    /// Whether `pi` lies in the Young subgroup.
    pub fn contains(&self, pi: &Perm) -> bool {
        (0..self.r()).all(|j| self.zeta(j) == self.zeta(pi.apply(j)))
    }

    /// All elements of the Young subgroup.
    pub fn subgroup_elements(&self) -> Vec<Perm> {
        let mut acc = vec![Perm::identity(self.r())];
        for i in 1..=self.m() {
            let block = self.block(i);
            let k = block.len();
            let mut next = Vec::new();
            for local in Perm::all(k) {
                for g in &acc {
                    let mut images = g.images().to_vec();
                    for (a, l) in block.clone().enumerate() {
                        images[l] = (block.start + local.apply(a)) as u8;
                    }
                    next.push(Perm::from_images(images).unwrap());
                }
            }
            acc = next;
        }
        acc
    }
}

/// The S_alpha cycle type of `pi`.
pub fn s_alpha_cycle_type(pi: &Perm, young: &YoungData) -> Result<MultiPartition> {
    if pi.len() != young.r() {
        return Err(DpError::NotPermutation(format!(
            "length {} does not match composition of {}",
            pi.len(),
            young.r()
        )));
    }
    let mut parts: BTreeMap<CyclePattern, Vec<u32>> = BTreeMap::new();
    for cycle in pi.cycles() {
        let word: Vec<u8> = cycle.iter().map(|&l| young.zeta(l) as u8).collect();
        let (root, l) = primitive_decompose(&canonical_pattern(&word)?);
        parts.entry(root).or_default().push(l as u32);
    }
    Ok(MultiPartition {
        assignment: parts
            .into_iter()
            .map(|(b, v)| (b, Partition::new(v)))
            .collect(),
    })
}

/// Primitive patterns whose content fits under `bound`.
fn primitive_patterns_under(bound: &[u32]) -> Vec<CyclePattern> {
    let m = bound.len();
    let total: u32 = bound.iter().sum();
    let mut out = std::collections::BTreeSet::new();
    fn rec(
        word: &mut Vec<u8>,
        left: &mut [u32],
        max_len: u32,
        out: &mut std::collections::BTreeSet<CyclePattern>,
    ) {
        if !word.is_empty() {
            let b = canonical_pattern(word).unwrap();
            if is_primitive(&b) {
                out.insert(b);
            }
        }
        if word.len() as u32 == max_len {
            return;
        }
        for x in 0..left.len() {
            if left[x] > 0 {
                left[x] -= 1;
                word.push(x as u8 + 1);
                rec(word, left, max_len, out);
                word.pop();
                left[x] += 1;
            }
        }
    }
    let mut left = bound.to_vec();
    rec(&mut Vec::new(), &mut left, total, &mut out);
    let _ = m;
    out.into_iter().collect()
}

pub const THETA_ALPHA_MAX: u64 = 8;

/// Every multipartition of content `alpha`, each exactly once.
pub fn enumerate_theta_alpha(young: &YoungData) -> Result<Vec<MultiPartition>> {
    cap_check("|alpha|", young.r() as u64, THETA_ALPHA_MAX)?;
    let patterns = primitive_patterns_under(young.alpha());
    let m = young.m();
    let contents: Vec<Vec<u32>> = patterns.iter().map(|b| b.content(m)).collect();
    let mut out = Vec::new();

    fn rec(
        idx: usize,
        remaining: &mut Vec<u32>,
        patterns: &[CyclePattern],
        contents: &[Vec<u32>],
        cur: &mut Vec<(usize, Partition)>,
        out: &mut Vec<MultiPartition>,
    ) {
        if remaining.iter().all(|&x| x == 0) {
            out.push(MultiPartition {
                assignment: cur
                    .iter()
                    .map(|(k, l)| (patterns[*k].clone(), l.clone()))
                    .collect(),
            });
            return;
        }
        if idx == patterns.len() {
            return;
        }
        let c = &contents[idx];
        let max_k = (0..remaining.len())
            .filter(|&x| c[x] > 0)
            .map(|x| remaining[x] / c[x])
            .min()
            .unwrap_or(0);
        for k in 0..=max_k {
            if k == 0 {
                rec(idx + 1, remaining, patterns, contents, cur, out);
                continue;
            }
            for x in 0..remaining.len() {
                remaining[x] -= k * c[x];
            }
            for lambda in enumerate_partitions(k, None, None) {
                cur.push((idx, lambda));
                rec(idx + 1, remaining, patterns, contents, cur, out);
                cur.pop();
            }
            for x in 0..remaining.len() {
                remaining[x] += k * c[x];
            }
        }
    }
    let mut remaining = young.alpha().to_vec();
    rec(
        0,
        &mut remaining,
        &patterns,
        &contents,
        &mut Vec::new(),
        &mut out,
    );
    out.sort();
    Ok(out)
}

/// s-reduces `boldλ([j])` for each single-letter pattern `[j]`, `j <= m`.
pub fn s_reduce_multi(
    lambda: &MultiPartition,
    ctx: PrimeCtx,
    s: u32,
    m: usize,
) -> MultiPartition {
    let mut out = lambda.clone();
    for j in 1..=m {
        let b = CyclePattern::single(j as u8);
        if let Some(l) = lambda.assignment.get(&b) {
            out.assignment.insert(b, s_reduce(l, ctx, s));
        }
    }
    out
}

pub fn is_s_reduced_multi(lambda: &MultiPartition, ctx: PrimeCtx, s: u32, m: usize) -> bool {
    (1..=m).all(|j| {
        lambda
            .get(&CyclePattern::single(j as u8))
            .is_none_or(|l| is_s_reduced(l, ctx, s))
    })
}

/// Elements of `Theta_alpha` grouped by s-reduced form, ordered by the
/// reduced representative.
pub fn s_equivalence_classes_multi(
    young: &YoungData,
    ctx: PrimeCtx,
    s: u32,
) -> Result<Vec<Vec<MultiPartition>>> {
    let mut classes: BTreeMap<MultiPartition, Vec<MultiPartition>> = BTreeMap::new();
    for l in enumerate_theta_alpha(young)? {
        classes
            .entry(s_reduce_multi(&l, ctx, s, young.m()))
            .or_default()
            .push(l);
    }
    Ok(classes.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn ctx(p: u64) -> PrimeCtx {
        PrimeCtx::new(p).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_partitions(3, None, None),
            vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(0, None, None), vec![Partition::empty()]);
        assert_eq!(
            enumerate_partitions(3, None, Some(2)),
            vec![part(&[3]), part(&[2, 1])]
        );
        assert_eq!(enumerate_partitions(10, None, None).len(), 42);
        assert_eq!(enumerate_partitions(6, Some(2), None).len(), 4);
    }

    #[test]
    fn centralisers() {
        assert_eq!(centraliser_orders(&part(&[2, 1])), (2, 1));
        assert_eq!(centraliser_orders(&Partition::ones(4)), (24, 24));
        assert_eq!(centraliser_orders(&part(&[2, 2])), (8, 2));
    }

    #[test]
    fn centraliser_brute_force() {
        for r in 1..=6usize {
            let all: Vec<Perm> = Perm::all(r).collect();
            for lambda in enumerate_partitions(r as u32, None, None) {
                let pi = all.iter().find(|x| x.cycle_type() == lambda).unwrap();
                let cent = all.iter().filter(|g| pi.conjugate_by(g) == *pi).count();
                assert_eq!(centraliser_orders(&lambda).0, cent as u128);
            }
        }
    }

    #[test]
    fn s_reduction_examples() {
        assert_eq!(s_reduce(&part(&[1, 1, 1]), ctx(2), 1), part(&[2, 1]));
        assert_eq!(s_reduce(&part(&[2, 1]), ctx(2), 1), part(&[2, 1]));
        assert_eq!(s_reduce(&part(&[1, 1, 1, 1]), ctx(2), 2), part(&[2, 2]));
        assert_eq!(s_reduce(&Partition::ones(9), ctx(3), 2), part(&[3, 3, 3]));
        assert_eq!(s_reduce(&Partition::ones(7), ctx(3), 1), part(&[3, 3, 1]));
    }

    #[test]
    fn s_classes_examples() {
        let c = s_equivalence_classes(3, ctx(2), 1, None);
        assert_eq!(
            c,
            vec![vec![part(&[3])], vec![part(&[2, 1]), part(&[1, 1, 1])]]
        );
        let c = s_equivalence_classes(2, ctx(2), 1, None);
        assert_eq!(c, vec![vec![part(&[2]), part(&[1, 1])]]);
        for p in [2, 3, 5] {
            assert_eq!(s_equivalence_classes(1, ctx(p), 1, None).len(), 1);
        }
    }

    #[test]
    fn s_class_count_matches_reduced_count() {
        for p in [2u64, 3] {
            for s in 1..=2 {
                for r in 0..=12 {
                    let q = ctx(p).pow_p(s) as u32;
                    assert_eq!(
                        s_equivalence_classes(r, ctx(p), s, None).len(),
                        enumerate_partitions(r, None, Some(q)).len()
                    );
                }
            }
        }
    }

    #[test]
    fn s_reduce_idempotent() {
        for p in [2u64, 3] {
            for s in 1..=2 {
                for r in 0..=10 {
                    for l in enumerate_partitions(r, None, None) {
                        let red = s_reduce(&l, ctx(p), s);
                        assert_eq!(red.size(), l.size());
                        assert!(is_s_reduced(&red, ctx(p), s));
                        assert_eq!(s_reduce(&red, ctx(p), s), red);
                    }
                }
            }
        }
    }

    #[test]
    fn patterns() {
        assert_eq!(canonical_pattern(&[2, 1, 1]).unwrap().word(), &[1, 1, 2]);
        assert_eq!(canonical_pattern(&[1]).unwrap().word(), &[1]);
        assert_eq!(canonical_pattern(&[1, 2, 1, 2]).unwrap().word(), &[1, 2, 1, 2]);
        assert_eq!(canonical_pattern(&[2, 1, 2, 1]).unwrap().word(), &[1, 2, 1, 2]);
        assert!(canonical_pattern(&[]).is_err());

        let b = canonical_pattern(&[1, 2, 1, 2]).unwrap();
        let (root, l) = primitive_decompose(&b);
        assert_eq!((root.word(), l), (&[1u8, 2][..], 2));
        assert_eq!(root.power(2), b);
        let b = canonical_pattern(&[1, 1, 2]).unwrap();
        assert_eq!(primitive_decompose(&b).1, 1);
        let (root, l) = primitive_decompose(&canonical_pattern(&[1, 1, 1]).unwrap());
        assert_eq!((root.word(), l), (&[1u8][..], 3));
    }

    #[test]
    fn s_alpha_cycle_type_examples() {
        let y = YoungData::new(vec![2, 1]);
        let pi = Perm::parse(3, "(1 2 3)").unwrap();
        let ct = s_alpha_cycle_type(&pi, &y).unwrap();
        assert_eq!(ct.to_string(), "{[1,1,2]: 1}");

        let y = YoungData::new(vec![4]);
        let ct = s_alpha_cycle_type(&Perm::identity(4), &y).unwrap();
        assert_eq!(ct.get(&CyclePattern::single(1)), Some(&Partition::ones(4)));

        let y = YoungData::new(vec![1, 1]);
        let ct = s_alpha_cycle_type(&Perm::parse(2, "(1 2)").unwrap(), &y).unwrap();
        assert_eq!(ct.to_string(), "{[1,2]: 1}");
        assert!(s_alpha_cycle_type(&Perm::identity(3), &y).is_err());
    }

    fn compositions(r: u32, m: usize) -> Vec<Vec<u32>> {
        if m == 1 {
            return vec![vec![r]];
        }
        let mut out = Vec::new();
        for a in 0..=r {
            for mut rest in compositions(r - a, m - 1) {
                rest.insert(0, a);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn theta_alpha_matches_orbits() {
        for r in 1..=5u32 {
            for m in 1..=3usize {
                for alpha in compositions(r, m) {
                    let y = YoungData::new(alpha.clone());
                    let sub = y.subgroup_elements();
                    // Brute-force S_alpha-orbits on S_r and the S_alpha cycle types.
                    let mut seen: BTreeSet<Perm> = BTreeSet::new();
                    let mut orbit_count = 0;
                    let mut types = BTreeSet::new();
                    for pi in Perm::all(r as usize) {
                        types.insert(s_alpha_cycle_type(&pi, &y).unwrap());
                        if seen.contains(&pi) {
                            continue;
                        }
                        orbit_count += 1;
                        let orbit: BTreeSet<Perm> =
                            sub.iter().map(|g| pi.conjugate_by(g)).collect();
                        let ct = s_alpha_cycle_type(&pi, &y).unwrap();
                        for x in &orbit {
                            assert_eq!(s_alpha_cycle_type(x, &y).unwrap(), ct);
                        }
                        // centraliser order
                        let cent = sub.len() / orbit.len();
                        assert_eq!(ct.centraliser_orders().0, cent as u128, "{alpha:?} {ct}");
                        seen.extend(orbit);
                    }
                    assert_eq!(types.len(), orbit_count, "alpha={alpha:?}");
                    let theta = enumerate_theta_alpha(&y).unwrap();
                    assert_eq!(theta.len(), orbit_count, "alpha={alpha:?}");
                    let theta_set: BTreeSet<_> = theta.iter().cloned().collect();
                    assert_eq!(theta_set, types);
                    for l in &theta {
                        assert_eq!(l.content(m), alpha);
                    }
                }
            }
        }
    }

    #[test]
    fn theta_alpha_small() {
        let t = enumerate_theta_alpha(&YoungData::new(vec![1])).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].to_string(), "{[1]: 1}");
        let t = enumerate_theta_alpha(&YoungData::new(vec![2])).unwrap();
        let shown: BTreeSet<String> = t.iter().map(|x| x.to_string()).collect();
        assert_eq!(
            shown,
            ["{[1]: 2}", "{[1]: 1+1}"].iter().map(|s| s.to_string()).collect()
        );
        assert_eq!(enumerate_theta_alpha(&YoungData::new(vec![1, 1])).unwrap().len(), 2);
        assert!(enumerate_theta_alpha(&YoungData::new(vec![5, 4])).is_err());
    }

    #[test]
    fn multi_reduction() {
        let mp = |s: &str| MultiPartition::parse(s).unwrap();
        let c = ctx(2);
        assert_eq!(s_reduce_multi(&mp("{[1]: 1+1}"), c, 1, 1), mp("{[1]: 2}"));
        assert_eq!(s_reduce_multi(&mp("{[1,2]: 1+1}"), c, 1, 2), mp("{[1,2]: 1+1}"));
        assert_eq!(
            s_reduce_multi(&mp("{[1]: 1+1, [2]: 1}"), c, 1, 2),
            mp("{[1]: 2, [2]: 1}")
        );
    }

    #[test]
    fn text_forms() {
        let m = MultiPartition::parse("{[1,1,2]: 2+1, [1]: 1}").unwrap();
        assert_eq!(m.to_string(), "{[1,1,2]: 2+1, [1]: 1}");
        assert_eq!(Partition::parse("3+2+1").unwrap().to_string(), "3+2+1");
        assert!(MultiPartition::parse("{[1,1]: 1}").is_err());
    }
}
