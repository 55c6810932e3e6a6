use super::sweep::check_t;
use super::weight::TestWeight;
use crate::eisenstein::CoeffSource;
use crate::error::{Error, Result};
use crate::ff::check_q;

/// Settings of a verification run, read from flat `key = value` text.
/// Blank lines and `#` comments are ignored.
#[derive(Clone, Debug)]
pub struct Config {
    pub q: u32,
    pub t: f64,
    pub deg_min: usize,
    pub deg_max: usize,
    pub psi: TestWeight,
    /// Degree bound for X and Q in the Ramanujan-sum comparison.
    pub ramanujan_degree: usize,
    /// u-degree of the exact formal identities.
    pub formal_degree: usize,
    /// u-degree of the bivariate L-series comparison.
    pub lseries_degree: usize,
    /// Number of random multiplicative systems.
    pub lseries_systems: usize,
    pub seed: u64,
    /// Truncation degree of the divisor-sum series.
    pub series_cutoff: usize,
    pub coeff_source: CoeffSource,
    /// Depth of the exploratory quotient spectra; 0 skips them.
    pub spectrum_depth: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            q: 5,
            t: 1.0,
            deg_min: 1,
            deg_max: 6,
            psi: TestWeight::delta(0),
            ramanujan_degree: 3,
            formal_degree: 6,
            lseries_degree: 8,
            lseries_systems: 5,
            seed: 20240601,
            series_cutoff: 15,
            coeff_source: CoeffSource::Closed,
            spectrum_depth: 6,
        }
    }
}

fn field_err(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Config { line, field: field.to_string(), message: message.into() }
}

fn num<T: std::str::FromStr>(line: usize, field: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| field_err(line, field, format!("cannot parse `{v}`")))
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut c = Config::default();
        let mut t_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body
                .split_once('=')
                .ok_or_else(|| field_err(line, "", format!("expected `key = value`, got `{body}`")))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "q" => {
                    c.q = num(line, k, v)?;
                    check_q(c.q).map_err(|e| field_err(line, k, e.to_string()))?;
                }
                "t" => {
                    c.t = num(line, k, v)?;
                    t_line = line;
                }
                "deg_min" => c.deg_min = num(line, k, v)?,
                "deg_max" => c.deg_max = num(line, k, v)?,
                "psi" => c.psi = TestWeight::parse(v).map_err(|e| field_err(line, k, e.to_string()))?,
                "ramanujan_degree" => c.ramanujan_degree = num(line, k, v)?,
                "formal_degree" => c.formal_degree = num(line, k, v)?,
                "lseries_degree" => c.lseries_degree = num(line, k, v)?,
                "lseries_systems" => c.lseries_systems = num(line, k, v)?,
                "seed" => c.seed = num(line, k, v)?,
                "series_cutoff" => c.series_cutoff = num(line, k, v)?,
                "spectrum_depth" => c.spectrum_depth = num(line, k, v)?,
                "coeff_source" => {
                    c.coeff_source = match v {
                        "closed" => CoeffSource::Closed,
                        "unfolded" => CoeffSource::Unfolded,
                        _ => return Err(field_err(line, k, format!("expected closed or unfolded, got `{v}`"))),
                    }
                }
                _ => return Err(field_err(line, k, "unknown key")),
            }
        }
        if c.deg_min == 0 || c.deg_min > c.deg_max {
            return Err(field_err(0, "deg_min", "need 1 <= deg_min <= deg_max"));
        }
        check_t(c.q, c.t).map_err(|_| field_err(t_line, "t", "t must lie in R^x with q^(2it) != 1"))?;
        Ok(c)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Resource(format!("{}: {e}", path.display())))?;
        Config::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = Config::parse("# run\nq = 7\nt = 0.5\npsi = 0:1, 1:1/2\n").unwrap();
        assert_eq!(c.q, 7);
        assert_eq!(c.psi.support.len(), 2);
        let e = Config::parse("t = 1\nq = 4\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 2, .. }));
        assert!(e.to_string().contains("q must be prime > 3"));
        let e = Config::parse("t = 0\n").unwrap_err();
        assert!(matches!(e, Error::Config { line: 1, ref field, .. } if field == "t"));
        assert!(Config::parse("bogus = 1").is_err());
        assert!(Config::parse("q 5").is_err());
    }
}
