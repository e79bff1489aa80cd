//! Holomorphic newform coefficients from an LMFDB-compatible API, with an
//! on-disk cache and recorded fixtures, and the checks run on them: Deligne
//! bound, Hecke relations, shifted convolution sums, growth at the cusp.

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub const DEFAULT_API_URL: &str = "https://www.lmfdb.org/api";
/// Bumped whenever the request or the parsed field set changes; part of the
/// cache key.
pub const ENDPOINT_VERSION: &str = "mf_newforms_v1";
const FIELDS: &str = "label,level,weight,dim,char_orbit_label,is_cm,cm_discs,traces";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewformRecord {
    pub label: String,
    pub weight: u32,
    pub level: u64,
    pub is_cm: bool,
    /// `a_n` for `n = 1..=n_max`, stored at index `n − 1`.
    pub an: Vec<i64>,
    /// Zero for every cusp form.  Only synthetic negative controls set it.
    #[serde(default)]
    pub constant_term: i64,
}

impl NewformRecord {
    pub fn n_max(&self) -> usize {
        self.an.len()
    }

    pub fn a(&self, n: usize) -> i64 {
        self.an[n - 1]
    }

    /// `λ(n) = a_n / n^{(k−1)/2}`, index `n` (entry 0 unused).
    pub fn lambdas(&self) -> Vec<f64> {
        let h = (self.weight as f64 - 1.0) / 2.0;
        let mut out = vec![0.0; self.an.len() + 1];
        for n in 1..=self.an.len() {
            out[n] = self.an[n - 1] as f64 / (n as f64).powf(h);
        }
        out
    }
}

/// Parse one API response body.  Empty `data` means the label is unknown.
pub fn parse_response(body: &str, label: &str) -> Result<NewformRecord> {
    let v: Value = serde_json::from_str(body)
        .map_err(|e| Error::SchemaDrift(format!("response is not JSON: {}", e)))?;
    let data = v
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::SchemaDrift("missing `data` array".into()))?;
    let rec = match data.first() {
        Some(r) => r,
        None => return Err(Error::NotFound(label.to_string())),
    };
    let field = |k: &str| {
        rec.get(k)
            .ok_or_else(|| Error::SchemaDrift(format!("missing field `{}`", k)))
    };
    let got_label = field("label")?
        .as_str()
        .ok_or_else(|| Error::SchemaDrift("`label` is not a string".into()))?;
    if got_label != label {
        return Err(Error::SchemaDrift(format!(
            "asked for {}, response is for {}",
            label, got_label
        )));
    }
    let int = |k: &str| {
        field(k)?
            .as_u64()
            .ok_or_else(|| Error::SchemaDrift(format!("`{}` is not an integer", k)))
    };
    let level = int("level")?;
    let weight = int("weight")? as u32;
    let dim = rec.get("dim").and_then(Value::as_u64).unwrap_or(1);
    if dim != 1 {
        return Err(Error::Unsupported(format!(
            "{} has Hecke field of degree {}; only rational newforms are ingested",
            label, dim
        )));
    }
    let an = field("traces")?
        .as_array()
        .ok_or_else(|| Error::SchemaDrift("`traces` is not an array".into()))?
        .iter()
        .map(|x| {
            x.as_i64()
                .ok_or_else(|| Error::SchemaDrift("non-integer trace".into()))
        })
        .collect::<Result<Vec<i64>>>()?;
    if an.is_empty() || an[0] != 1 {
        return Err(Error::SchemaDrift(format!(
            "{}: traces must start with a_1 = 1",
            label
        )));
    }
    Ok(NewformRecord {
        label: label.to_string(),
        weight,
        level,
        is_cm: rec.get("is_cm").and_then(Value::as_bool).unwrap_or(false),
        an,
        constant_term: 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Source {
    Cache,
    Network,
    Fixture,
}

#[derive(Clone, Debug)]
pub struct NewformClient {
    pub base_url: String,
    pub cache_dir: PathBuf,
    pub fixture_dir: PathBuf,
    pub offline: bool,
}

static LAST_REQUEST: Mutex<Option<Instant>> = Mutex::new(None);

pub fn default_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/newforms")
}

fn default_cache_dir() -> PathBuf {
    std::env::var_os("HOME")
        .map(|h| PathBuf::from(h).join(".cache/equidist/newforms"))
        .unwrap_or_else(|| std::env::temp_dir().join("equidist-newforms"))
}

impl NewformClient {
    /// Settings from `NEWFORM_API_URL` and `NEWFORM_CACHE_DIR`.
    pub fn from_env() -> Self {
        NewformClient {
            base_url: std::env::var("NEWFORM_API_URL").unwrap_or_else(|_| DEFAULT_API_URL.into()),
            cache_dir: std::env::var_os("NEWFORM_CACHE_DIR")
                .map(PathBuf::from)
                .unwrap_or_else(default_cache_dir),
            fixture_dir: default_fixture_dir(),
            offline: false,
        }
    }

    pub fn offline(cache_dir: impl Into<PathBuf>) -> Self {
        NewformClient {
            base_url: DEFAULT_API_URL.into(),
            cache_dir: cache_dir.into(),
            fixture_dir: default_fixture_dir(),
            offline: true,
        }
    }

    fn key(label: &str) -> Result<String> {
        if label.is_empty()
            || !label
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '-')
        {
            return Err(Error::InvalidArgument(format!("bad label {:?}", label)));
        }
        Ok(format!("{}__{}.json", label, ENDPOINT_VERSION))
    }

    pub fn cache_path(&self, label: &str) -> Result<PathBuf> {
        Ok(self.cache_dir.join(Self::key(label)?))
    }

    /// Cache first, then the network (unless offline), then the fixture.
    /// Whatever body is used is stored verbatim in the cache.
    pub fn fetch(&self, label: &str) -> Result<(NewformRecord, Source)> {
        let path = self.cache_path(label)?;
        if let Ok(body) = fs::read_to_string(&path) {
            return Ok((parse_response(&body, label)?, Source::Cache));
        }
        let mut net_err = None;
        if !self.offline {
            match self.get(label) {
                Ok(body) => {
                    let rec = parse_response(&body, label)?;
                    self.store(&path, &body)?;
                    return Ok((rec, Source::Network));
                }
                Err(e) => net_err = Some(e),
            }
        }
        let fx = self.fixture_dir.join(format!("{}.json", label));
        match fs::read_to_string(&fx) {
            Ok(body) => {
                let rec = parse_response(&body, label)?;
                self.store(&path, &body)?;
                Ok((rec, Source::Fixture))
            }
            Err(_) => Err(match net_err {
                Some(e @ Error::SchemaDrift(_)) => e,
                _ => Error::NotFound(label.to_string()),
            }),
        }
    }

    fn store(&self, path: &Path, body: &str) -> Result<()> {
        fs::create_dir_all(&self.cache_dir).map_err(|e| Error::Io(e.to_string()))?;
        fs::write(path, body).map_err(|e| Error::Io(e.to_string()))
    }

    /// One GET with at most one request per second and three attempts with
    /// doubling backoff on transport errors, 429 and 5xx.
    fn get(&self, label: &str) -> Result<String> {
        let url = format!(
            "{}/mf_newforms/?label={}&_format=json&_fields={}",
            self.base_url.trim_end_matches('/'),
            label,
            FIELDS
        );
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(15)))
            .http_status_as_error(false)
            .build()
            .into();
        let mut wait = Duration::from_secs(1);
        let mut last = String::new();
        for _ in 0..3 {
            {
                let mut guard = LAST_REQUEST.lock().expect("rate limiter");
                if let Some(t) = *guard {
                    let since = t.elapsed();
                    if since < Duration::from_secs(1) {
                        std::thread::sleep(Duration::from_secs(1) - since);
                    }
                }
                *guard = Some(Instant::now());
            }
            match agent.get(&url).call() {
                Ok(mut resp) => {
                    let status = resp.status().as_u16();
                    if status == 404 {
                        return Err(Error::NotFound(label.to_string()));
                    }
                    if status == 429 || status >= 500 {
                        last = format!("HTTP {}", status);
                    } else if status != 200 {
                        return Err(Error::Io(format!("HTTP {} from {}", status, url)));
                    } else {
                        return resp
                            .body_mut()
                            .read_to_string()
                            .map_err(|e| Error::Io(e.to_string()));
                    }
                }
                Err(e) => last = e.to_string(),
            }
            std::thread::sleep(wait);
            wait *= 2;
        }
        Err(Error::Io(format!("{}: {}", url, last)))
    }
}

/// Fetch with settings from the environment.
pub fn fetch_newform(label: &str) -> Result<NewformRecord> {
    NewformClient::from_env().fetch(label).map(|(r, _)| r)
}

pub fn primes_upto(n: usize) -> Vec<usize> {
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if sieve[p] {
            out.push(p);
            let mut m = p * p;
            while m <= n {
                sieve[m] = false;
                m += p;
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DeligneReport {
    pub label: String,
    pub primes_checked: usize,
    pub max_abs_lambda_p: f64,
    pub argmax: usize,
    pub pass: bool,
}

/// `max |λ(p)|` over primes `p ≤ n_max` not dividing the level.
pub fn deligne_check(rec: &NewformRecord) -> DeligneReport {
    let lam = rec.lambdas();
    let mut best = (0.0f64, 0usize);
    let mut count = 0;
    for p in primes_upto(rec.n_max()) {
        if rec.level % p as u64 == 0 {
            continue;
        }
        count += 1;
        if lam[p].abs() > best.0 {
            best = (lam[p].abs(), p);
        }
    }
    DeligneReport {
        label: rec.label.clone(),
        primes_checked: count,
        max_abs_lambda_p: best.0,
        argmax: best.1,
        pass: best.0 <= 2.0 + 1e-9,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeReport {
    pub label: String,
    pub recursions: usize,
    pub max_recursion_err: f64,
    pub coprime_pairs: usize,
    pub max_multiplicative_err: f64,
    pub lambda_one: f64,
    pub pass: bool,
}

pub const HECKE_TOL: f64 = 1e-9;

/// `λ(p^{r+1}) = λ(p)λ(p^r) − λ(p^{r−1})` at good primes and
/// `λ(mn) = λ(m)λ(n)` for coprime `m, n` with `mn ≤ n_max`.
pub fn hecke_check(rec: &NewformRecord) -> HeckeReport {
    let lam = rec.lambdas();
    let nmax = rec.n_max();
    let mut rec_err = 0.0f64;
    let mut nrec = 0;
    for p in primes_upto(nmax) {
        if rec.level % p as u64 == 0 {
            continue;
        }
        let (mut prev, mut cur) = (1usize, p);
        while cur.checked_mul(p).is_some_and(|n| n <= nmax) {
            let next = cur * p;
            let e = (lam[next] - (lam[p] * lam[cur] - lam[prev])).abs();
            rec_err = rec_err.max(e);
            nrec += 1;
            prev = cur;
            cur = next;
        }
    }
    let mut mult_err = 0.0f64;
    let mut pairs = 0;
    for m in 2..=nmax {
        for n in m + 1..=nmax / m {
            if m.gcd(&n) == 1 {
                mult_err = mult_err.max((lam[m * n] - lam[m] * lam[n]).abs());
                pairs += 1;
            }
        }
    }
    HeckeReport {
        label: rec.label.clone(),
        recursions: nrec,
        max_recursion_err: rec_err,
        coprime_pairs: pairs,
        max_multiplicative_err: mult_err,
        lambda_one: lam[1],
        pass: (lam[1] - 1.0).abs() <= HECKE_TOL
            && rec_err <= HECKE_TOL
            && mult_err <= HECKE_TOL,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftedConvolution {
    pub label: String,
    pub l: usize,
    pub x: usize,
    pub sum: f64,
    pub envelope: f64,
    pub ratio: f64,
    pub epsilon: f64,
}

/// `Σ_{n ≤ x} |λ(n)λ(n+l)|` against the envelope
/// `x ∏_{p ≤ x} (1 + 2|λ(p)|/p) / log(ex)^{2−ε}`.  The ratio is a diagnostic:
/// the implied constant is not known.
pub fn shifted_convolution(rec: &NewformRecord, l: usize, x: usize, epsilon: f64) -> Result<ShiftedConvolution> {
    if x == 0 || x + l > rec.n_max() {
        return Err(Error::RangeExceeded(format!(
            "need x + l <= {} (x = {}, l = {})",
            rec.n_max(),
            x,
            l
        )));
    }
    let lam = rec.lambdas();
    let sum: f64 = (1..=x).map(|n| (lam[n] * lam[n + l]).abs()).sum();
    let prod: f64 = primes_upto(x)
        .iter()
        .map(|&p| 1.0 + 2.0 * lam[p].abs() / p as f64)
        .product();
    let xf = x as f64;
    let envelope = xf * prod / (1.0 + xf.ln()).powf(2.0 - epsilon);
    Ok(ShiftedConvolution {
        label: rec.label.clone(),
        l,
        x,
        sum,
        envelope,
        ratio: sum / envelope,
        epsilon,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthSample {
    pub x: f64,
    pub y: f64,
    pub terms: usize,
    /// `|f(z)| e^{2πy}`.
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub label: String,
    pub samples: Vec<GrowthSample>,
    pub max_ratio: f64,
    /// Relative change of the largest ratio between the two highest sample
    /// heights.
    pub drift: f64,
    pub pass: bool,
}

pub const GROWTH_TAIL: f64 = 1e-10;

/// Bound on `e^{2πy} Σ_{n>N} |a_n| e^{−2πny}` from `|a_n| ≤ τ(n) n^{(k−1)/2}
/// ≤ 2 n^{k/2}`.
fn growth_tail(nt: usize, y: f64, k: u32) -> f64 {
    let mut tail = 0.0;
    let mut n = nt + 1;
    loop {
        let nf = n as f64;
        let t = 2.0 * nf.powf(k as f64 / 2.0) * (-2.0 * PI * (nf - 1.0) * y).exp();
        tail += t;
        if t < 1e-30 * tail.max(1e-300) || (n > nt + 10 && t < 1e-40) {
            return tail;
        }
        n += 1;
    }
}

/// `f(x + iy)` from the truncated q-expansion.
pub fn eval_q_expansion(rec: &NewformRecord, x: f64, y: f64, terms: usize) -> Complex64 {
    let mut v = Complex64::new(rec.constant_term as f64, 0.0);
    for n in 1..=terms.min(rec.n_max()) {
        let nf = n as f64;
        v += rec.a(n) as f64 * Complex64::from_polar((-2.0 * PI * nf * y).exp(), 2.0 * PI * nf * x);
    }
    v
}

/// `|f(z)| e^{2πy}` at each sample, with the truncation chosen so the
/// certified tail of the normalized value is below 1e−10.  Passes when the
/// ratio settles: relative drift below 1e−6 between the two highest points.
pub fn growth_check(rec: &NewformRecord, samples: &[(f64, f64)]) -> Result<GrowthReport> {
    let mut out = Vec::with_capacity(samples.len());
    for &(x, y) in samples {
        if y < 0.5 {
            return Err(Error::InvalidArgument(format!("sample height {} < 0.5", y)));
        }
        let mut terms = 1;
        while growth_tail(terms, y, rec.weight) > GROWTH_TAIL {
            terms += 1;
            if terms > rec.n_max() {
                return Err(Error::TruncationInsufficient(format!(
                    "{} coefficients do not reach tail {:e} at y = {}",
                    rec.n_max(),
                    GROWTH_TAIL,
                    y
                )));
            }
        }
        let v = eval_q_expansion(rec, x, y, terms);
        out.push(GrowthSample {
            x,
            y,
            terms,
            ratio: v.norm() * (2.0 * PI * y).exp(),
        });
    }
    let max_ratio = out.iter().map(|s| s.ratio).fold(0.0, f64::max);
    // Largest ratio at each distinct height, in increasing height.
    let mut by_y: Vec<(f64, f64)> = Vec::new();
    let mut sorted: Vec<&GrowthSample> = out.iter().collect();
    sorted.sort_by(|a, b| a.y.total_cmp(&b.y));
    for smp in sorted {
        match by_y.last_mut() {
            Some((y, r)) if *y == smp.y => *r = r.max(smp.ratio),
            _ => by_y.push((smp.y, smp.ratio)),
        }
    }
    let drift = match by_y.len() {
        0 | 1 => 0.0,
        n => {
            let (a, b) = (by_y[n - 2].1, by_y[n - 1].1);
            (b - a).abs() / a.abs().max(1e-300)
        }
    };
    Ok(GrowthReport {
        label: rec.label.clone(),
        pass: max_ratio.is_finite() && drift < 1e-6,
        samples: out,
        max_ratio,
        drift,
    })
}

/// Sample points used by the CLI and the acceptance suite.
pub fn default_growth_samples() -> Vec<(f64, f64)> {
    let mut v = Vec::new();
    for &y in &[0.5, 1.0, 2.0, 4.0, 6.0] {
        for &x in &[0.0, 0.17, 0.5] {
            v.push((x, y));
        }
    }
    v
}
