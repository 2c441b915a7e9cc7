//! Weight initialisation: fan-in-scaled uniform for weights (bound
//! 1/sqrt(fan_in)), zero biases. The zeros scheme exists for closed-form
//! loss tests.

use rand::Rng;

use super::config::{InitScheme, NetSpec};
use crate::error::Result;
use crate::net::Network;
use crate::rng::{stream, stream_rng};

pub fn init_weights(spec: &NetSpec, scheme: InitScheme, seed: u64) -> Result<Network> {
    spec.validate()?;
    let mut net = spec.zeros_net();
    if scheme == InitScheme::Zeros {
        return Ok(net);
    }
    let mut rng = stream_rng(seed, stream::INIT);
    let support = Network::support_for(spec.shape);

    let fill = |w: &mut [f64], fan_in: usize, rng: &mut rand_chacha::ChaCha8Rng| {
        let bound = 1.0 / (fan_in as f64).sqrt();
        for v in w {
            *v = (rng.gen::<f64>() * 2.0 - 1.0) * bound;
        }
    };

    for taps in &mut net.conv1.taps {
        fill(taps, support, &mut rng);
    }
    if let Some(c2) = &mut net.conv2 {
        for taps in &mut c2.taps {
            fill(taps, support, &mut rng);
        }
    }
    let head_fan_in = net.head.weights.len();
    fill(&mut net.head.weights, head_fan_in, &mut rng);
    Ok(net)
}
