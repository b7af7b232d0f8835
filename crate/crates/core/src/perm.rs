//! Permutations of `{1..r}`, stored 0-based.

use std::fmt;

use crate::error::{DpError, Result};
use crate::partitions::Partition;

/// A bijection of `{0..r-1}`; `images[l]` is the image of `l`.
/// Composition is right-to-left: `(a * b)(l) = a(b(l))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(r: usize) -> Self {
        Perm {
            images: (0..r as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &x in &images {
            let x = x as usize;
            if x >= r || seen[x] {
                return Err(DpError::NotPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of `{1..r}` from 1-based cycles.
    pub fn from_cycles(r: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u8> = (0..r as u8).collect();
        let mut touched = vec![false; r];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a > r || touched[a - 1] {
                    return Err(DpError::NotPermutation(format!("{cycles:?}")));
                }
                touched[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                if b == 0 || b > r {
                    return Err(DpError::NotPermutation(format!("{cycles:?}")));
                }
                images[a - 1] = (b - 1) as u8;
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, l: usize) -> usize {
        self.images[l] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            images: other.images.iter().map(|&l| self.images[l as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.len()];
        for (l, &x) in self.images.iter().enumerate() {
            images[x as usize] = l as u8;
        }
        Perm { images }
    }

    /// `sigma * self * sigma^{-1}`.
    pub fn conjugate_by(&self, sigma: &Perm) -> Perm {
        let mut images = vec![0u8; self.len()];
        for l in 0..self.len() {
            images[sigma.apply(l)] = sigma.images[self.apply(l)];
        }
        Perm { images }
    }

    /// Disjoint cycles including fixed points, each starting at its
    /// smallest element, ordered by that element. 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let r = self.len();
        let mut seen = vec![false; r];
        let mut out = Vec::new();
        for start in 0..r {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut l = self.apply(start);
            while l != start {
                seen[l] = true;
                cycle.push(l);
                l = self.apply(l);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len() as u32).collect())
    }

    /// All permutations of `{0..r-1}` in lexicographic order of images.
    pub fn all(r: usize) -> AllPerms {
        AllPerms {
            next: Some((0..r as u8).collect()),
        }
    }

    pub fn parse(r: usize, text: &str) -> Result<Perm> {
        let t = text.trim();
        if t.is_empty() || t == "()" || t == "id" {
            return Ok(Perm::identity(r));
        }
        let mut cycles = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            let body_start = rest_trim
                .strip_prefix('(')
                .ok_or_else(|| DpError::Parse(format!("expected '(' in {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| DpError::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = &body_start[..close];
            let cycle: Vec<usize> = body
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|e| DpError::Parse(e.to_string())))
                .collect::<Result<_>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body_start[close + 1..].trim_start();
        }
        Perm::from_cycles(r, &cycles)
    }
}

impl fmt::Display for Perm {
    /// Cycle notation, 1-based, fixed points omitted; identity is `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            any = true;
            write!(f, "(")?;
            for (k, l) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", l + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

pub struct AllPerms {
    next: Option<Vec<u8>>,
}

impl Iterator for AllPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Perm { images: cur })
    }
}

/// Advances `a` to the next permutation in lexicographic order.
pub fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rfind(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = a.iter().rposition(|x| *x > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}
