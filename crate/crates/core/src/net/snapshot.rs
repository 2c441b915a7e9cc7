//! Weight snapshot format: JSON with explicit shapes, layer order,
//! activation kind, and dims. Floats are written in shortest decimal
//! representation, which round-trips f64 bit patterns exactly.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::activation::Activation;
use super::network::{ConvLayer, DenseHead, Network};
use crate::error::{Error, Result};
use crate::synth::Shape;

pub const SNAPSHOT_FORMAT: &str = "radlab-net-v1";

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SnapshotDoc {
    format: String,
    dims: u8,
    d: usize,
    channels: usize,
    activation: Activation,
    conv1: ConvLayer,
    #[serde(default)]
    conv2: Option<ConvLayer>,
    head: DenseHead,
    /// Provenance for designed networks: "prop1", "two_layer", "sigmoid",
    /// "higher_order(k)"; absent for trained or hand-built nets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    design: Option<String>,
}

pub fn snapshot_to_json(net: &Network, design: Option<&str>) -> Result<String> {
    net.validate()?;
    let doc = SnapshotDoc {
        format: SNAPSHOT_FORMAT.to_string(),
        dims: net.shape.dims(),
        d: net.shape.d(),
        channels: net.channels(),
        activation: net.activation,
        conv1: net.conv1.clone(),
        conv2: net.conv2.clone(),
        head: net.head.clone(),
        design: design.map(str::to_string),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn snapshot_from_json(json: &str) -> Result<(Network, Option<String>)> {
    let doc: SnapshotDoc = serde_json::from_str(json)?;
    if doc.format != SNAPSHOT_FORMAT {
        return Err(Error::config(format!(
            "unsupported snapshot format '{}'",
            doc.format
        )));
    }
    let net = Network {
        shape: Shape::new(doc.dims, doc.d)?,
        conv1: doc.conv1,
        conv2: doc.conv2,
        activation: doc.activation,
        head: doc.head,
    };
    net.validate()?;
    if net.channels() != doc.channels {
        return Err(Error::config(format!(
            "snapshot declares {} channels but carries {}",
            doc.channels,
            net.channels()
        )));
    }
    Ok((net, doc.design))
}

pub fn save_snapshot(net: &Network, design: Option<&str>, path: &Path) -> Result<()> {
    std::fs::write(path, snapshot_to_json(net, design)?)?;
    Ok(())
}

pub fn load_snapshot(path: &Path) -> Result<(Network, Option<String>)> {
    snapshot_from_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_net() -> impl Strategy<Value = Network> {
        let finite = || prop::num::f64::NORMAL | prop::num::f64::ZERO;
        (
            1usize..3,
            8usize..14,
            prop::bool::ANY,
            prop::bool::ANY,
            any::<u64>(),
        )
            .prop_flat_map(move |(c, d, two_d, two_layers, _)| {
                let shape = if two_d { Shape::TwoD(d) } else { Shape::OneD(d) };
                let channels = if two_layers && !two_d { 1 } else { c };
                let two = two_layers && !two_d;
                let support = Network::support_for(shape);
                let n_taps = channels * support + if two { support } else { 0 };
                let n_bias = channels + if two { 1 } else { 0 };
                let n_head = channels * shape.len();
                (
                    Just(shape),
                    Just(channels),
                    Just(two),
                    prop::collection::vec(finite(), n_taps),
                    prop::collection::vec(finite(), n_bias),
                    prop::collection::vec(finite(), n_head),
                    finite(),
                )
            })
            .prop_map(|(shape, channels, two, taps, bias, head_w, head_b)| {
                let mut net = Network::zeros(shape, channels, two, Activation::PiecewiseSigmoid { tau: 2.0 });
                let mut flat = net.params_flat();
                let support = Network::support_for(shape);
                let nt1 = channels * support;
                flat[..nt1].copy_from_slice(&taps[..nt1]);
                let mut off = nt1;
                flat[off..off + channels].copy_from_slice(&bias[..channels]);
                off += channels;
                if two {
                    flat[off..off + support].copy_from_slice(&taps[nt1..nt1 + support]);
                    off += support;
                    flat[off] = bias[channels];
                    off += 1;
                }
                flat[off..off + head_w.len()].copy_from_slice(&head_w);
                off += head_w.len();
                flat[off] = head_b;
                net.set_params_flat(&flat);
                net
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn snapshot_round_trips_bitwise(net in arb_net()) {
            let json = snapshot_to_json(&net, Some("prop1")).unwrap();
            let (back, design) = snapshot_from_json(&json).unwrap();
            prop_assert_eq!(design.as_deref(), Some("prop1"));
            let a = net.params_flat();
            let b = back.params_flat();
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert_eq!(x.to_bits(), y.to_bits());
            }
            prop_assert_eq!(net.shape, back.shape);
            prop_assert_eq!(net.activation, back.activation);
        }
    }

    #[test]
    fn rejects_unknown_format() {
        let net = Network::zeros(Shape::OneD(8), 1, false, Activation::Relu);
        let json = snapshot_to_json(&net, None).unwrap().replace(SNAPSHOT_FORMAT, "other-v9");
        assert!(snapshot_from_json(&json).is_err());
    }
}
