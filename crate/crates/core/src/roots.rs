//! Positive zeros u_{nu,q} of J_nu, computed on demand and cached.
//!
//! Roots are located per order by a forward scan (step pi/4, which cannot
//! straddle two zeros of any valid order) seeded with a McMahon/Olver-style
//! first-root estimate, then polished by a safeguarded Newton iteration that
//! falls back to bisection whenever a step would leave the verified
//! sign-change bracket.

use crate::error::{Error, Result};
use crate::real::{Real, ScalarKey};
use crate::special::{bessel_j_prime_unchecked, bessel_j_unchecked, Order};
use std::collections::HashMap;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

/// Environment variable naming the cache directory used when no explicit
/// directory is configured.
pub const CACHE_DIR_ENV: &str = "BESSELTERM_CACHE_DIR";
/// File name of the persisted root cache inside the cache directory.
pub const CACHE_FILE_NAME: &str = "bessel_roots.csv";

/// Cache of positive Bessel-function zeros, keyed by (order, index).
///
/// Reads are lock-shared; a miss takes the write lock so each root is
/// computed exactly once. Results are deterministic regardless of thread
/// interleaving.
pub struct RootTable<T> {
    entries: RwLock<HashMap<ScalarKey, (T, Vec<T>)>>,
    tolerance: T,
    cache_file: Option<PathBuf>,
}

impl<T: Real> Default for RootTable<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> RootTable<T> {
    /// In-memory table with the default residual tolerance
    /// (|J_nu(root)| <= 1e-12, widened to 32 eps for narrower scalars).
    pub fn new() -> Self {
        RootTable {
            entries: RwLock::new(HashMap::new()),
            tolerance: default_tolerance::<T>(),
            cache_file: None,
        }
    }

    /// Table backed by `dir/bessel_roots.csv`; existing entries are loaded
    /// and re-verified against the residual tolerance.
    pub fn with_cache_dir(dir: &Path) -> Result<Self> {
        let mut table = Self::new();
        table.cache_file = Some(dir.join(CACHE_FILE_NAME));
        table.load_cache()?;
        Ok(table)
    }

    /// Resolve the cache directory from an explicit flag value, then the
    /// `BESSELTERM_CACHE_DIR` environment variable; in-memory when neither
    /// is set.
    pub fn from_env(flag_dir: Option<&Path>) -> Result<Self> {
        if let Some(dir) = flag_dir {
            return Self::with_cache_dir(dir);
        }
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(dir) => Self::with_cache_dir(Path::new(&dir)),
            None => Ok(Self::new()),
        }
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    /// The q-th positive zero of J_nu (q is 1-based).
    pub fn root(&self, nu: Order<T>, q: u32) -> Result<T> {
        if q == 0 {
            return Err(Error::Domain("root index q must be >= 1".into()));
        }
        let key = ScalarKey::of(nu.value());
        {
            let map = self.entries.read().expect("root table poisoned");
            if let Some((_, roots)) = map.get(&key) {
                if roots.len() >= q as usize {
                    return Ok(roots[q as usize - 1]);
                }
            }
        }
        let mut map = self.entries.write().expect("root table poisoned");
        let entry = map.entry(key).or_insert_with(|| (nu.value(), Vec::new()));
        while entry.1.len() < q as usize {
            let next = next_root(
                nu.value(),
                entry.1.last().copied(),
                entry.1.len() as u32 + 1,
                self.tolerance,
            )?;
            entry.1.push(next);
        }
        Ok(entry.1[q as usize - 1])
    }

    /// The first `count` zeros, strictly increasing.
    pub fn roots_up_to(&self, nu: Order<T>, count: u32) -> Result<Vec<T>> {
        if count == 0 {
            return Err(Error::Domain("root count must be >= 1".into()));
        }
        self.root(nu, count)?;
        let map = self.entries.read().expect("root table poisoned");
        let (_, roots) = map.get(&ScalarKey::of(nu.value())).expect("just computed");
        Ok(roots[..count as usize].to_vec())
    }

    /// Write every cached entry to the configured cache file. No-op without
    /// a cache directory.
    pub fn persist(&self) -> Result<()> {
        let Some(path) = &self.cache_file else {
            return Ok(());
        };
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let map = self.entries.read().expect("root table poisoned");
        let mut orders: Vec<&(T, Vec<T>)> = map.values().collect();
        orders.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("orders are finite"));
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "order,index,root")?;
        for (order, roots) in orders {
            let o = order.to_f64().unwrap_or(f64::NAN);
            for (i, r) in roots.iter().enumerate() {
                writeln!(
                    out,
                    "{:.16e},{},{:.16e}",
                    o,
                    i + 1,
                    r.to_f64().unwrap_or(f64::NAN)
                )?;
            }
        }
        out.flush()?;
        Ok(())
    }

    fn load_cache(&mut self) -> Result<()> {
        let Some(path) = &self.cache_file else {
            return Ok(());
        };
        if !path.exists() {
            return Ok(());
        }
        let reader = BufReader::new(std::fs::File::open(path)?);
        let mut staged: HashMap<ScalarKey, (T, Vec<(u32, T)>)> = HashMap::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            if lineno == 0 {
                if line.trim() != "order,index,root" {
                    return Err(Error::CacheFormat(format!(
                        "unexpected header in {}: {line}",
                        path.display()
                    )));
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let (Some(o), Some(i), Some(r)) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::CacheFormat(format!("short row: {line}")));
            };
            let order: f64 = o
                .trim()
                .parse()
                .map_err(|e| Error::CacheFormat(format!("{e}: {line}")))?;
            let index: u32 = i
                .trim()
                .parse()
                .map_err(|e| Error::CacheFormat(format!("{e}: {line}")))?;
            let root: f64 = r
                .trim()
                .parse()
                .map_err(|e| Error::CacheFormat(format!("{e}: {line}")))?;
            let order = T::of(order);
            let root = T::of(root);
            staged
                .entry(ScalarKey::of(order))
                .or_insert_with(|| (order, Vec::new()))
                .1
                .push((index, root));
        }
        let mut map = self.entries.write().expect("root table poisoned");
        for (key, (order, mut rows)) in staged {
            rows.sort_by_key(|(i, _)| *i);
            let mut roots = Vec::with_capacity(rows.len());
            for (pos, (index, root)) in rows.into_iter().enumerate() {
                // keep only a contiguous, verified prefix
                if index as usize != pos + 1 {
                    break;
                }
                if bessel_j_unchecked(order, root).abs() > self.tolerance {
                    break;
                }
                roots.push(root);
            }
            if !roots.is_empty() {
                map.insert(key, (order, roots));
            }
        }
        Ok(())
    }
}

fn default_tolerance<T: Real>() -> T {
    T::of(1e-12).max(T::epsilon() * T::of(32.0))
}

/// First-root scan seed; a slight underestimate for every valid order.
fn first_root_scan_start<T: Real>(nu: T) -> T {
    if nu >= T::of(2.0) {
        // j_{nu,1} > nu + 1.855757 nu^(1/3)
        nu + T::of(1.8557571) * nu.powf(T::of(1.0 / 3.0)) - T::one()
    } else if nu > T::of(-0.5) {
        T::of(0.05)
    } else {
        // first zero collapses toward 0 as nu -> -1
        T::of(0.4) * (nu + T::one()).sqrt()
    }
}

fn next_root<T: Real>(nu: T, last: Option<T>, index: u32, tolerance: T) -> Result<T> {
    let step = T::pi() * T::of(0.25);
    let (mut lo, mut f_lo) = match last {
        Some(prev) => {
            let lo = prev + T::of(0.05) * step;
            (lo, bessel_j_unchecked(nu, lo))
        }
        None => {
            let mut lo = first_root_scan_start(nu);
            let mut f = bessel_j_unchecked(nu, lo);
            // walk back if the seed accidentally starts past the first zero
            while f <= T::zero() && lo > T::of(1e-280) {
                lo = lo * T::of(0.5);
                f = bessel_j_unchecked(nu, lo);
            }
            (lo, f)
        }
    };
    let fine_scan = last.is_none() && nu < T::of(-0.5);
    let h = if fine_scan {
        (nu + T::one()).sqrt() * T::of(0.4)
    } else {
        step
    };
    let mut hi;
    let mut f_hi;
    let mut guard = 0;
    loop {
        hi = lo + h;
        f_hi = bessel_j_unchecked(nu, hi);
        if f_lo == T::zero() || f_lo.signum() != f_hi.signum() {
            break;
        }
        lo = hi;
        f_lo = f_hi;
        guard += 1;
        if guard > 10_000 {
            return Err(Error::RootConvergence {
                order: nu.to_f64().unwrap_or(f64::NAN),
                index,
            });
        }
    }
    refine(nu, lo, hi, f_lo, index, tolerance)
}

/// Safeguarded Newton within a sign-change bracket (bisection fallback).
fn refine<T: Real>(nu: T, mut a: T, mut b: T, f_a: T, index: u32, tolerance: T) -> Result<T> {
    let mut positive_at_a = f_a > T::zero();
    if f_a == T::zero() {
        return Ok(a);
    }
    let mut x = (a + b) * T::of(0.5);
    for _ in 0..120 {
        let f = bessel_j_unchecked(nu, x);
        if f == T::zero() {
            return Ok(x);
        }
        if (f > T::zero()) == positive_at_a {
            a = x;
        } else {
            b = x;
        }
        let fp = bessel_j_prime_unchecked(nu, x);
        let newton = x - f / fp;
        x = if fp != T::zero() && newton > a && newton < b {
            newton
        } else {
            (a + b) * T::of(0.5)
        };
        if b - a <= T::epsilon() * T::of(4.0) * x.abs() {
            break;
        }
        // keep the bracket honest if Newton landed on an endpoint
        if x == a || x == b {
            x = (a + b) * T::of(0.5);
            positive_at_a = bessel_j_unchecked(nu, a) > T::zero();
        }
    }
    if bessel_j_unchecked(nu, x).abs() <= tolerance {
        Ok(x)
    } else {
        Err(Error::RootConvergence {
            order: nu.to_f64().unwrap_or(f64::NAN),
            index,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ord(v: f64) -> Order<f64> {
        Order::new(v).unwrap()
    }

    #[test]
    fn first_roots_match_reference() {
        let t = RootTable::new();
        assert_abs_diff_eq!(
            t.root(ord(0.0), 1).unwrap(),
            2.404825557695773,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            t.root(ord(1.0), 1).unwrap(),
            3.831705970207512,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            t.root(ord(0.0), 2).unwrap(),
            5.520078110286311,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            t.root(ord(5.0), 1).unwrap(),
            8.771483815959954,
            epsilon = 1e-12
        );
    }

    #[test]
    fn residuals_below_tolerance() {
        let t = RootTable::new();
        for q in 1..=20 {
            let r = t.root(ord(0.0), q).unwrap();
            assert!(bessel_j_unchecked(0.0, r).abs() <= 1e-12, "q={q}");
        }
    }

    #[test]
    fn interlacing_of_adjacent_orders() {
        let t = RootTable::new();
        let u01 = t.root(ord(0.0), 1).unwrap();
        let u11 = t.root(ord(1.0), 1).unwrap();
        let u02 = t.root(ord(0.0), 2).unwrap();
        assert!(u01 < u11 && u11 < u02);
    }

    #[test]
    fn bulk_accessor_is_strictly_increasing_and_consistent() {
        let t = RootTable::new();
        let rs = t.roots_up_to(ord(0.0), 3).unwrap();
        assert_eq!(rs.len(), 3);
        assert!(rs[0] < rs[1] && rs[1] < rs[2]);
        let single = t.roots_up_to(ord(5.0), 1).unwrap();
        assert_eq!(single, vec![t.root(ord(5.0), 1).unwrap()]);
    }

    #[test]
    fn repeated_calls_are_bit_identical() {
        let t = RootTable::new();
        let a = t.root(ord(2.5), 7).unwrap();
        let b = t.root(ord(2.5), 7).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn rejects_index_zero() {
        let t: RootTable<f64> = RootTable::new();
        assert!(t.root(ord(0.0), 0).is_err());
        assert!(t.roots_up_to(ord(0.0), 0).is_err());
    }

    #[test]
    fn negative_fractional_orders() {
        let t = RootTable::new();
        // J_{-1/2}(x) ~ cos(x): zeros at (2k-1) pi/2
        let pi = std::f64::consts::PI;
        assert_abs_diff_eq!(t.root(ord(-0.5), 1).unwrap(), pi / 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(t.root(ord(-0.5), 3).unwrap(), 2.5 * pi, epsilon = 1e-10);
        // near the lower end of the order domain the first zero is tiny
        let r = t.root(ord(-0.98), 1).unwrap();
        assert!(r > 0.0 && r < 0.5);
    }

    #[test]
    fn cache_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let t = RootTable::with_cache_dir(dir.path()).unwrap();
        let mut originals = Vec::new();
        for q in 1..=12 {
            originals.push(t.root(ord(3.0), q).unwrap());
        }
        originals.push(t.root(ord(0.5), 1).unwrap());
        t.persist().unwrap();

        let reloaded = RootTable::with_cache_dir(dir.path()).unwrap();
        for (q, &r) in originals[..12].iter().enumerate() {
            let loaded = reloaded.root(ord(3.0), q as u32 + 1).unwrap();
            assert_eq!(loaded.to_bits(), r.to_bits());
        }
        let header = std::fs::read_to_string(dir.path().join(CACHE_FILE_NAME)).unwrap();
        assert!(header.starts_with("order,index,root\n"));
    }

    #[test]
    fn corrupt_cache_rows_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(CACHE_FILE_NAME);
        std::fs::write(&path, "order,index,root\n0.0,1,9.9e0\n").unwrap();
        // row fails the residual check, so the table recomputes from scratch
        let t = RootTable::<f64>::with_cache_dir(dir.path()).unwrap();
        assert_abs_diff_eq!(
            t.root(ord(0.0), 1).unwrap(),
            2.404825557695773,
            epsilon = 1e-12
        );

        std::fs::write(&path, "bogus header\n").unwrap();
        assert!(RootTable::<f64>::with_cache_dir(dir.path()).is_err());
    }
}
