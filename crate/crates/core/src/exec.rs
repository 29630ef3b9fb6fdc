//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the [`Exec::Parallel`] mode
//! fans work out over the rayon pool. Without it, both modes run on the
//! calling thread. Results are always returned in input order.

/// Execution mode for the sweep-style loops.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            _ => items.into_iter().map(f).collect(),
        }
    }

    /// First item (in input order) for which `f` returns `Some`.
    pub fn find_first<T, R, F>(self, items: Vec<T>, f: F) -> Option<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.into_par_iter().map(f).find_first(Option::is_some).flatten()
            }
            _ => items.into_iter().find_map(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..500).collect();
        let a = Exec::Sequential.map(xs.clone(), |x| x * x);
        let b = Exec::Parallel.map(xs.clone(), |x| x * x);
        assert_eq!(a, b);
        let f = |x: u64| (x % 37 == 36).then_some(x);
        assert_eq!(Exec::Sequential.find_first(xs.clone(), f), Some(36));
        assert_eq!(Exec::Parallel.find_first(xs, f), Some(36));
    }
}
