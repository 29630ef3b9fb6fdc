//! ASCII Auslander–Reiten grids.
//!
//! Module context: row = interval length, column = `a + b - 2`. Derived
//! context: column = `a + b - 2 + (n + 1)d`, rows flipped in odd degrees, so
//! the shift acts as a glide reflection as in the usual `Z A_n` picture.

use std::collections::BTreeMap;

use crate::dercat::SInt;
use crate::modcat::Interval;

/// Marker of a position: later entries win.
pub const IN: char = '∘';
pub const OUT: char = '·';
pub const COHEART: char = '•';
pub const HEART: char = '★';

fn grid(rows: usize, cells: &BTreeMap<(usize, i64), char>) -> String {
    let (lo, hi) = match (cells.keys().map(|k| k.1).min(), cells.keys().map(|k| k.1).max()) {
        (Some(l), Some(h)) => (l, h),
        _ => return String::new(),
    };
    let mut out = String::new();
    for r in 1..=rows {
        let mut line = String::new();
        for c in lo..=hi {
            line.push(*cells.get(&(r, c)).unwrap_or(&' '));
            line.push(' ');
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Module grid over `all`; `marks` are applied in order, later ones winning.
pub fn render_module(all: &[Interval], marks: &[(&[Interval], char)]) -> String {
    let rows = all.iter().map(Interval::len).max().unwrap_or(0);
    let mut cells = BTreeMap::new();
    for iv in all {
        let mut m = OUT;
        for (set, ch) in marks {
            if set.contains(iv) {
                m = *ch;
            }
        }
        cells.insert((iv.len(), (iv.a + iv.b - 2) as i64), m);
    }
    grid(rows, &cells)
}

/// Position of `M[d]` in the derived grid.
pub fn derived_cell(n: usize, s: &SInt) -> (usize, i64) {
    let len = s.iv.len();
    let row = if s.d.rem_euclid(2) == 0 { len } else { n + 1 - len };
    (row, (s.iv.a + s.iv.b - 2) as i64 + (n as i64 + 1) * s.d)
}

/// Derived grid over `all` (objects of `D^b(k A_n)`).
pub fn render_derived(n: usize, all: &[SInt], marks: &[(&[SInt], char)]) -> String {
    let mut cells = BTreeMap::new();
    for s in all {
        let mut m = OUT;
        for (set, ch) in marks {
            if set.contains(s) {
                m = *ch;
            }
        }
        cells.insert(derived_cell(n, s), m);
    }
    grid(n, &cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modcat::Algebra;

    #[test]
    fn nakayama_marking() {
        let all = Algebra::uniform(5, 4).unwrap().indecomposables();
        let m: Vec<Interval> =
            ["[1,1]", "[4,4]", "[5,5]", "[1,2]", "[4,5]", "[1,3]", "[3,5]", "[1,4]", "[2,5]"].iter().map(|s| s.parse().unwrap()).collect();
        let text = render_module(&all, &[(&m, IN)]);
        assert_eq!(text.matches(IN).count(), 9);
        assert_eq!(text.lines().next().unwrap(), "∘   ·   ·   ∘   ∘");
        assert_eq!(text.lines().nth(3).unwrap(), "      ∘   ∘");
        assert!(!render_module(&all, &[]).contains(IN));
    }

    #[test]
    fn shift_is_a_glide() {
        let s: SInt = "[1,1]@0".parse().unwrap();
        assert_eq!(derived_cell(4, &s), (1, 0));
        assert_eq!(derived_cell(4, &s.shift(1)), (4, 5));
        assert_eq!(derived_cell(4, &"[1,4]@0".parse().unwrap()), (4, 3));
    }
}
