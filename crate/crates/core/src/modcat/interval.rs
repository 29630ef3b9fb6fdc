use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The interval module `M[a,b]`: one-dimensional at vertices `a..=b`,
/// socle at `a`, top at `b` (arrows act `j+1 -> j`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    pub a: usize,
    pub b: usize,
}

impl Interval {
    pub fn new(a: usize, b: usize) -> Self {
        debug_assert!(1 <= a && a <= b, "invalid interval [{a},{b}]");
        Interval { a, b }
    }

    pub fn simple(i: usize) -> Self {
        Interval::new(i, i)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.b - self.a + 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a <= v && v <= self.b
    }

    /// Closed-form Hom rule between interval modules: `a <= c <= b <= d`.
    pub fn hom_nonzero(&self, to: &Interval) -> bool {
        self.a <= to.a && to.a <= self.b && self.b <= to.b
    }

    /// Vertices on which the canonical map `self -> to` is nonzero.
    pub fn image_support(&self, to: &Interval) -> Option<(usize, usize)> {
        self.hom_nonzero(to).then_some((to.a, self.b))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.a).cmp(&(other.len(), other.a))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("malformed interval {s:?}; expected \"[a,b]\""));
        let inner = s.trim().strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || a > b {
            return Err(Error::Input(format!("interval {s} needs 1 <= a <= b")));
        }
        Ok(Interval { a, b })
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A module up to isomorphism: a multiset of interval modules.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Obj(BTreeMap<Interval, usize>);

impl Obj {
    pub fn zero() -> Self {
        Obj::default()
    }

    pub fn single(iv: Interval) -> Self {
        Obj::from_iter([iv])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&mut self, iv: Interval, mult: usize) {
        if mult > 0 {
            *self.0.entry(iv).or_default() += mult;
        }
    }

    pub fn multiplicity(&self, iv: &Interval) -> usize {
        self.0.get(iv).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Interval, &usize)> {
        self.0.iter()
    }

    /// Distinct summands in canonical order.
    pub fn support(&self) -> impl Iterator<Item = &Interval> {
        self.0.keys()
    }

    /// Summands with repetition, in canonical order.
    pub fn expand(&self) -> Vec<Interval> {
        self.0.iter().flat_map(|(iv, &m)| std::iter::repeat_n(*iv, m)).collect()
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn direct_sum(&self, other: &Obj) -> Obj {
        let mut out = self.clone();
        for (iv, &m) in other.iter() {
            out.add(*iv, m);
        }
        out
    }

    pub fn dim_vector(&self, n: usize) -> Vec<usize> {
        let mut d = vec![0; n];
        for (iv, &m) in self.iter() {
            for v in iv.a..=iv.b {
                d[v - 1] += m;
            }
        }
        d
    }
}

impl FromIterator<Interval> for Obj {
    fn from_iter<I: IntoIterator<Item = Interval>>(iter: I) -> Self {
        let mut o = Obj::zero();
        for iv in iter {
            o.add(iv, 1);
        }
        o
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(iv, &m)| if m == 1 { iv.to_string() } else { format!("{iv}^{m}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_order() {
        let iv: Interval = "[2,4]".parse().unwrap();
        assert_eq!(iv, Interval::new(2, 4));
        assert!("[6,2]".parse::<Interval>().is_err());
        assert!("[0,1]".parse::<Interval>().is_err());
        assert!("2,4".parse::<Interval>().is_err());
        assert!(Interval::new(5, 5) < Interval::new(1, 2));
        assert!(Interval::new(1, 2) < Interval::new(2, 3));
    }

    #[test]
    fn obj_json_shape() {
        let o: Obj = [Interval::new(1, 3), Interval::new(2, 2), Interval::new(2, 2)].into_iter().collect();
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(s, r#"{"[2,2]":2,"[1,3]":1}"#);
        assert_eq!(serde_json::from_str::<Obj>(&s).unwrap(), o);
        assert_eq!(o.dim_vector(3), vec![1, 3, 1]);
    }
}
