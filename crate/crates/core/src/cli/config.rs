//! Configuration files and the shipped example presets.

use serde::{Deserialize, Serialize};

use crate::dercat::{Class, SInt, Window};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hearts::exact::Options;
use crate::modcat::{Algebra, Interval};
use crate::pairs::ExactCat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    Module,
    Derived,
}

/// `caps[i]` bounds the length of intervals starting at vertex `i + 1`;
/// a single `cap` applies to every vertex, neither means hereditary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caps: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<Algebra> {
        match (&self.caps, self.cap) {
            (Some(_), Some(_)) => Err(Error::Input("give either caps or cap".into())),
            (Some(c), None) => Algebra::new(self.n, c.clone()),
            (None, Some(c)) => Algebra::uniform(self.n, c),
            (None, None) if self.n == 0 => Err(Error::Input("n must be positive".into())),
            (None, None) => Ok(Algebra::hereditary(self.n)),
        }
    }
}

/// Outer window `[d_min, d_max]`; the trust window drops `margin` degrees
/// on each side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub n: usize,
    pub d_min: i64,
    pub d_max: i64,
    pub margin: i64,
}

impl WindowSpec {
    pub fn build(&self) -> Result<Window> {
        if self.n == 0 {
            return Err(Error::Input("n must be positive".into()));
        }
        let (t_min, t_max) = (self.d_min + self.margin, self.d_max - self.margin);
        if self.margin < 1 || t_min > t_max {
            return Err(Error::Input(format!("window [{}, {}] leaves no trust window with margin {}", self.d_min, self.d_max, self.margin)));
        }
        Window::new(t_min, t_max, self.margin)
    }
}

/// A subcategory: explicit items, a shift-periodic pattern, or a union.
///
/// A pattern item `x@e` contributes `x@(e + k·period)` for every integer
/// `k`, restricted to degrees in `[from, to]` when given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SubcatSpec {
    Items {
        items: Vec<String>,
    },
    Pattern {
        cell: Vec<String>,
        period: i64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        from: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        to: Option<i64>,
    },
    Union {
        union: Vec<SubcatSpec>,
    },
}

impl SubcatSpec {
    pub fn items(items: &[&str]) -> Self {
        SubcatSpec::Items { items: items.iter().map(|s| s.to_string()).collect() }
    }

    pub fn intervals(&self, alg: &Algebra) -> Result<Vec<Interval>> {
        let SubcatSpec::Items { items } = self else {
            return Err(Error::Input("patterns and unions need the derived context".into()));
        };
        let mut out = Vec::new();
        for s in items {
            let iv: Interval = s.parse()?;
            alg.check(&iv)?;
            out.push(iv);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn class(&self, n: usize) -> Result<Class> {
        let parse = |items: &[String]| -> Result<Vec<SInt>> {
            items
                .iter()
                .map(|s| {
                    let x: SInt = s.parse()?;
                    if x.iv.b > n {
                        return Err(Error::Input(format!("{x} does not exist for n = {n}")));
                    }
                    Ok(x)
                })
                .collect()
        };
        Ok(match self {
            SubcatSpec::Items { items } => {
                let set: std::collections::BTreeSet<SInt> = parse(items)?.into_iter().collect();
                Class::exact(move |s| set.contains(s))
            }
            SubcatSpec::Pattern { cell, period, from, to } => {
                if *period < 1 {
                    return Err(Error::Input("period must be positive".into()));
                }
                let (cell, p, lo, hi) = (parse(cell)?, *period, from.unwrap_or(i64::MIN), to.unwrap_or(i64::MAX));
                Class::exact(move |s| (lo..=hi).contains(&s.d) && cell.iter().any(|x| x.iv == s.iv && (s.d - x.d).rem_euclid(p) == 0))
            }
            SubcatSpec::Union { union } => {
                let mut c = Class::empty();
                for part in union {
                    c = c.union(&part.class(n)?);
                }
                c
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    /// Multiplicity factor of the audit search; 1 disables the audit.
    #[serde(default = "one")]
    pub audit_factor: usize,
    #[serde(default = "two")]
    pub prime: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_bound: Option<usize>,
}

fn one() -> usize {
    1
}

fn two() -> u32 {
    2
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { audit_factor: 1, prime: 2, dim_bound: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub context: Context,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowSpec>,
    /// Optional for `enumerate`, required otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<SubcatSpec>,
    #[serde(default)]
    pub bounds: Bounds,
}

impl Config {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: Config = serde_json::from_str(s).map_err(|e| Error::Input(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        match self.context {
            Context::Module => {
                let alg = self.algebra.as_ref().ok_or_else(|| Error::Input("module context needs an algebra".into()))?.build()?;
                if let Some(u) = &self.u {
                    u.intervals(&alg)?;
                }
            }
            Context::Derived => {
                let w = self.window.as_ref().ok_or_else(|| Error::Input("derived context needs a window".into()))?;
                w.build()?;
                if let Some(u) = &self.u {
                    u.class(w.n)?;
                }
            }
        }
        if self.bounds.audit_factor == 0 {
            return Err(Error::Input("audit factor must be at least 1".into()));
        }
        if !matches!(self.bounds.prime, 2 | 3 | 5 | 7) {
            return Err(Error::Input("enumeration prime must be 2, 3, 5 or 7".into()));
        }
        Ok(())
    }

    pub fn options(&self) -> Options {
        Options { prime: self.bounds.prime, dim_bound: self.bounds.dim_bound, equivalence: true }
    }

    pub fn u(&self) -> Result<&SubcatSpec> {
        self.u.as_ref().ok_or_else(|| Error::Input("this command needs a subcategory u".into()))
    }
}

/// Names accepted by `paper_example`.
pub const PRESETS: [&str; 3] = ["derived-a4", "nakayama-a5", "nakayama-a5-dual"];

const NAKAYAMA_M: [&str; 9] = ["[1,1]", "[4,4]", "[5,5]", "[1,2]", "[4,5]", "[1,3]", "[3,5]", "[1,4]", "[2,5]"];

pub fn paper_example(name: &str) -> Result<Config> {
    let module = |items: Vec<String>| Config {
        context: Context::Module,
        algebra: Some(AlgebraSpec { n: 5, caps: None, cap: Some(4) }),
        window: None,
        u: Some(SubcatSpec::Items { items }),
        bounds: Bounds::default(),
    };
    match name {
        "nakayama-a5" => Ok(module(NAKAYAMA_M.iter().map(|s| s.to_string()).collect())),
        "nakayama-a5-dual" => {
            // (U, V) transports to (DV, DU) over the opposite algebra
            let alg = Algebra::uniform(5, 4)?;
            let e = ExactCat::new(alg.clone(), Exec::Sequential)?;
            let m = e.ids_of(&NAKAYAMA_M.iter().map(|s| s.parse().expect("preset")).collect::<Vec<Interval>>())?;
            let mut items: Vec<Interval> = e.intervals(&e.perp_ext_right(&m)).iter().map(|iv| alg.dual_interval(iv)).collect();
            items.sort();
            let mut c = module(items.iter().map(ToString::to_string).collect());
            c.algebra = Some(AlgebraSpec { n: 5, caps: Some(alg.opposite().caps().to_vec()), cap: None });
            Ok(c)
        }
        "derived-a4" => Ok(Config {
            context: Context::Derived,
            algebra: None,
            window: Some(WindowSpec { n: 4, d_min: -8, d_max: 10, margin: 8 }),
            u: Some(SubcatSpec::Union {
                union: vec![
                    SubcatSpec::Pattern { cell: vec!["[1,1]@0".into(), "[2,2]@0".into(), "[1,2]@0".into()], period: 1, from: None, to: None },
                    SubcatSpec::Pattern {
                        cell: vec!["[1,3]@0".into(), "[2,3]@0".into(), "[3,3]@0".into()],
                        period: 1,
                        from: Some(2),
                        to: None,
                    },
                ],
            }),
            bounds: Bounds::default(),
        }),
        _ => Err(Error::Input(format!("unknown example {name:?}; expected one of {}", PRESETS.join(", ")))),
    }
}
