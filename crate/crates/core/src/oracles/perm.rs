use std::fmt;

/// A permutation of `{0, …, n−1}`, stored as its image list.
///
/// Products are read left to right: `(p * q)(x) = q(p(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u16).collect())
    }

    /// From an image list; `None` unless it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Self(images.into_iter().map(|x| x as u16).collect()))
    }

    /// From disjoint-or-not cycles of 0-based points, composed left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        let mut p = Self::identity(degree);
        for c in cycles {
            if c.iter().any(|&x| x >= degree) {
                return None;
            }
            let mut seen = c.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != c.len() {
                return None;
            }
            let mut img: Vec<usize> = (0..degree).collect();
            for (k, &x) in c.iter().enumerate() {
                img[x] = c[(k + 1) % c.len()];
            }
            p = p.mul(&Self::from_images(img)?);
        }
        Some(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Self(inv.into())
    }

    /// `g⁻¹·self·g`.
    pub fn conjugate(&self, g: &Self) -> Self {
        g.inverse().mul(self).mul(g)
    }

    /// `[self, other] = self⁻¹·other⁻¹·self·other`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Restriction to the points `offset..offset+len`, which must be invariant.
    pub fn restrict(&self, offset: usize, len: usize) -> Self {
        Self((offset..offset + len).map(|x| (self.0[x] as usize - offset) as u16).collect())
    }

    /// Disjoint union of permutations on consecutive point ranges.
    pub fn concat(parts: &[Perm]) -> Self {
        let mut out = Vec::new();
        let mut offset = 0u16;
        for p in parts {
            out.extend(p.0.iter().map(|&x| x + offset));
            offset += p.0.len() as u16;
        }
        Self(out.into())
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }
}

impl fmt::Display for Perm {
    /// Cycle notation with 1-based points; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut any = false;
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.image(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_to_right_products() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        // 0 →a 1 →b 2.
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(a.mul(&b).to_string(), "(1,3,2)");
        assert!(a.mul(&a).is_identity());
        assert_eq!(a.mul(&b).inverse(), b.mul(&a));
    }

    #[test]
    fn commutator_and_parity() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let c = a.commutator(&b);
        assert!(c.is_even());
        assert!(!c.is_identity());
        assert!(!a.is_even());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert!(Perm::from_cycles(3, &[vec![0, 3]]).is_none());
        assert!(Perm::from_cycles(3, &[vec![0, 1, 0]]).is_none());
    }

    #[test]
    fn concat_and_restrict() {
        let a = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(2, &[vec![0, 1]]).unwrap();
        let ab = Perm::concat(&[a.clone(), b.clone()]);
        assert_eq!(ab.degree(), 5);
        assert_eq!(ab.restrict(0, 3), a);
        assert_eq!(ab.restrict(3, 2), b);
    }
}
