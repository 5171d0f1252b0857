use std::hint::black_box;
use std::time::{Duration, Instant};

use gf2nbasis_core::gauss::build_params;
use gf2nbasis_core::gf2x::DEFAULT_KARATSUBA_THRESHOLD;
use gf2nbasis_core::{GnbElement, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::output::{Cell, Table};
use crate::CliError;

/// Bases timed alongside the polynomial ladder.
const GNB_SELECTION: &[(usize, usize)] = &[(251, 2), (268, 1), (252, 3), (250, 9), (599, 8)];

const SAMPLE_TARGET: Duration = Duration::from_micros(200);

fn random_poly(rng: &mut ChaCha8Rng, bits: usize) -> Poly {
    let words = (0..bits.div_ceil(64)).map(|_| rng.gen()).collect();
    let mut p = Poly::from_words(words).truncate(bits);
    p.set_coeff(bits - 1, true);
    p
}

/// Median nanoseconds per call of `f` over `samples` timed batches.
fn median_ns<F: FnMut()>(samples: usize, mut f: F) -> f64 {
    let start = Instant::now();
    f();
    let once = start.elapsed().max(Duration::from_nanos(1));
    let iters = (SAMPLE_TARGET.as_nanos() / once.as_nanos()).clamp(1, 1 << 20) as u32;
    let mut times: Vec<f64> = (0..samples.max(1))
        .map(|_| {
            let t = Instant::now();
            for _ in 0..iters {
                f();
            }
            t.elapsed().as_nanos() as f64 / iters as f64
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}

/// Doubling ladder from `min` up to `max`, `max` always included.
pub fn ladder(min: usize, max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = min;
    while d < max {
        out.push(d);
        d *= 2;
    }
    out.push(max);
    out
}

pub fn crossover(min_deg: usize, max_deg: usize, samples: usize) -> Result<Table, CliError> {
    if min_deg < 1 || min_deg > max_deg {
        return Err(CliError::Domain(gf2nbasis_core::Error::Parameter(format!(
            "need 1 <= min-deg <= max-deg, got {min_deg} and {max_deg}"
        ))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f32);
    let mut table = Table::new(&["degree", "algorithm", "ns_per_op"]);
    for deg in ladder(min_deg, max_deg) {
        let a = random_poly(&mut rng, deg + 1);
        let b = random_poly(&mut rng, deg + 1);
        let school = median_ns(samples, || {
            black_box(black_box(&a).mul_schoolbook(black_box(&b)));
        });
        let kara = median_ns(samples, || {
            black_box(black_box(&a).mul_karatsuba(black_box(&b), DEFAULT_KARATSUBA_THRESHOLD));
        });
        for (name, ns) in [("schoolbook", school), ("karatsuba", kara)] {
            table
                .rows
                .push(vec![Cell::Int(deg as u128), Cell::Str(name.into()), Cell::Float(ns)]);
        }
    }
    for &(n, k) in GNB_SELECTION {
        let params = build_params(n, k)?;
        let words = |rng: &mut ChaCha8Rng| (0..n.div_ceil(64)).map(|_| rng.gen()).collect();
        let x = GnbElement::from_words(&params, words(&mut rng));
        let y = GnbElement::from_words(&params, words(&mut rng));
        let ns = median_ns(samples, || {
            black_box(black_box(&x).mul(black_box(&y)).expect("same basis"));
        });
        table
            .rows
            .push(vec![Cell::Int(n as u128), Cell::Str(format!("gnb_type{k}")), Cell::Float(ns)]);
    }
    Ok(table)
}
