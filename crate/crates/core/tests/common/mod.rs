#![allow(dead_code)]

use std::path::PathBuf;

use cgc::{LabeledSample, TableSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn iris_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/iris.csv")
}

pub fn iris(features: &[&str]) -> LabeledSample {
    TableSpec::new(iris_path(), "species")
        .features(features.iter().copied())
        .load()
        .unwrap()
        .into_sample()
        .unwrap()
}

fn distance(a: &[f64], b: &[f64], alpha: f64) -> f64 {
    let mut sq = 0.0;
    for k in 0..a.len() {
        sq += (a[k] - b[k]) * (a[k] - b[k]);
    }
    sq.sqrt().powf(alpha)
}

/// Compensated running sum so the oracle's rounding stays far below test tolerances.
#[derive(Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Average distance over unordered pairs, double loop.
pub fn brute_gmd(rows: &[&[f64]], alpha: f64) -> f64 {
    let m = rows.len();
    let mut total = Kahan::default();
    for i in 0..m {
        for j in i + 1..m {
            total.add(distance(rows[i], rows[j], alpha));
        }
    }
    total.value() / (m * (m - 1) / 2) as f64
}

pub struct BruteCgc {
    pub rho: f64,
    pub u: f64,
    pub within: Vec<f64>,
}

/// Independent CGC: classes in first-appearance order, every GMD by enumeration.
pub fn brute_cgc(sample: &LabeledSample, alpha: f64) -> BruteCgc {
    let rows: Vec<&[f64]> = sample.rows().collect();
    let mut classes: Vec<&str> = Vec::new();
    for l in sample.labels() {
        if !classes.contains(&l.as_str()) {
            classes.push(l);
        }
    }
    let u = brute_gmd(&rows, alpha);
    let n = rows.len() as f64;
    let mut weighted = 0.0;
    let mut within = Vec::new();
    for c in &classes {
        let members: Vec<&[f64]> = rows
            .iter()
            .zip(sample.labels())
            .filter(|(_, l)| l == c)
            .map(|(r, _)| *r)
            .collect();
        let g = brute_gmd(&members, alpha);
        weighted += members.len() as f64 / n * g;
        within.push(g);
    }
    BruteCgc {
        rho: (u - weighted) / u,
        u,
        within,
    }
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if got == want {
        0.0
    } else {
        (got - want).abs() / want.abs()
    }
}

/// Normal matrix with labels drawn so that every class has at least `min_class` rows.
pub fn random_sample(rng: &mut ChaCha8Rng, n: usize, d: usize, k: usize, min_class: usize) -> LabeledSample {
    assert!(n >= k * min_class);
    let mut labels: Vec<String> = (0..n)
        .map(|i| {
            let class = if i < k * min_class {
                i % k
            } else {
                rng.random_range(0..k)
            };
            format!("c{class}")
        })
        .collect();
    // shuffle so guaranteed members are not all at the front
    for i in (1..n).rev() {
        labels.swap(i, rng.random_range(0..=i));
    }
    let shift: Vec<f64> = (0..k).map(|_| rng.random_range(-1.0..1.0)).collect();
    let data = labels
        .iter()
        .flat_map(|l| {
            let c: usize = l[1..].parse().unwrap();
            (0..d)
                .map(|_| {
                    let z: f64 = StandardNormal.sample(&mut *rng);
                    z + shift[c]
                })
                .collect::<Vec<_>>()
        })
        .collect();
    LabeledSample::new(data, d, labels).unwrap()
}

/// Random orthogonal d×d matrix via Gram-Schmidt on a Gaussian matrix, row-major.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, d: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    while basis.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut *rng)).collect();
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

pub fn transform_rows(sample: &LabeledSample, f: impl Fn(&[f64]) -> Vec<f64>) -> LabeledSample {
    let data = sample.rows().flat_map(f).collect();
    LabeledSample::new(data, sample.d(), sample.labels().to_vec()).unwrap()
}
