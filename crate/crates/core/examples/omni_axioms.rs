//! Checks the five omni-Lie algebroid properties of the Dorfman bracket on
//! random polynomial sections of 𝔇E ⊕ 𝔍E.

use omnilie::omni::{self, OmniSample};
use omnilie::sample::Sampler;

fn main() {
    let (n, k) = (2, 2);
    let mut sampler = Sampler::new(42);
    let samples: Vec<OmniSample> = (0..10)
        .map(|_| OmniSample {
            x: sampler.omni(n, k, 2),
            y: sampler.omni(n, k, 2),
            z: sampler.omni(n, k, 2),
            f: sampler.poly(n, 2),
        })
        .collect();
    for check in omni::check_omni_axioms(&samples).iter() {
        println!("{:<30} {} ({} evaluations)", check.name, if check.pass { "ok" } else { "FAILED" }, check.evaluated);
    }
}
