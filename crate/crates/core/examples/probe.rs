//! Scratch probe for protocol timing and RMSE (not part of the test suite).
use radlab_core::protocol;
use radlab_core::synth::PolarityMode;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let which = args.get(1).map(String::as_str).unwrap_or("1d");
    match which {
        "sig5" => {
            for s in [1u64, 3, 4] {
                let seeds = (11 + 1000 * s, 12 + 1000 * s, 13 + 1000 * s);
                let cell = protocol::table1_cell_probe(PolarityMode::Both, 5.0 / 255.0, 1e-4, seeds).unwrap();
                println!("seeds#{s} 1d both sigma_n=5/255: rmse_px={:.4} (x2 = {:.4})",
                    cell.report.rmse_px, cell.report.rmse_px * 2.0);
            }
        }
        "orient" => {
            use radlab_core::analyze::{classify_filter, cut_profile, least_squares, spearman_rho};
            for s in [1u64, 3, 4] {
                let seeds = (11 + 1000 * s, 12 + 1000 * s, 13 + 1000 * s);
                let cell = protocol::table1_cell_probe(PolarityMode::PositiveOnly, 10.0/255.0, 1e-4, seeds).unwrap();
                let net = cell.best.as_ref().unwrap();
                let report = classify_filter(&net.conv1.taps[0]);
                let d = 32usize;
                let w = &net.head.weights;
                let (mut lsum, mut ln, mut rsum, mut rn) = (0.0, 0, 0.0, 0);
                let mut xs = Vec::new(); let mut ys = Vec::new();
                for i in 0..d {
                    let x = i as f64 / 31.0;
                    if x < 0.5 { lsum += w[i].abs(); ln += 1; }
                    else { rsum += w[i].abs(); rn += 1; xs.push(x); ys.push(w[i]); }
                }
                let fit = least_squares(&xs, &ys);
                println!("1d s#{s}: taps={:?} class={:?} left_mean={:.4} right_mean={:.4} ratio={:.3} right_slope={:.3}",
                    net.conv1.taps[0].iter().map(|v| (v*100.0).round()/100.0).collect::<Vec<_>>(),
                    report.class, lsum/ln as f64, rsum/rn as f64, (lsum/ln as f64)/(rsum/rn as f64), fit.slope);
            }
            for s in [0u64, 1] {
                let seeds = (11 + 1000 * s, 12 + 1000 * s, 13 + 1000 * s);
                let cell = protocol::table2_cell_probe(PolarityMode::PositiveOnly, 1, seeds).unwrap();
                let net = cell.best.as_ref().unwrap();
                let report = classify_filter(&net.conv1.taps[0]);
                let d = 32usize;
                let angle = report.orientation.unwrap_or(0.0);
                let profile = cut_profile(&net.head.weights, d, angle).unwrap();
                let (mut lx, mut lv, mut rx, mut rv) = (vec![], vec![], vec![], vec![]);
                for &(t, v) in &profile {
                    if t <= 0.0 { lx.push(-t); lv.push(v); } 
                    if t >= 0.0 { rx.push(t); rv.push(v); }
                }
                let rho_l = spearman_rho(&lx, &lv);
                let rho_r = spearman_rho(&rx, &rv);
                println!("2d s#{s}: class={:?} angle={:.3} rho_left={:.3} rho_right={:.3} rmse_x2={:.3}",
                    report.class, angle, rho_l, rho_r, cell.report.rmse_px * 2.0);
            }
        }
        "2dc" => {
            let c: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(4);
            for (pol, name) in [(PolarityMode::Both, "both"), (PolarityMode::PositiveOnly, "pos")] {
                let t0 = Instant::now();
                let cell = protocol::table2_cell_probe(pol, c, (11, 12, 13)).unwrap();
                println!(
                    "2d {name} C={c}: rmse_x2={:.4} wall={:.0}s",
                    cell.report.rmse_px * 2.0,
                    t0.elapsed().as_secs_f64()
                );
            }
        }
        "2dl2" => {
            let l2: f64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(1e-4);
            for (pol, name) in [(PolarityMode::Both, "both"), (PolarityMode::PositiveOnly, "pos")] {
                let t0 = Instant::now();
                let cell = protocol::table2_cell_probe_l2(pol, 1, (11, 12, 13), l2).unwrap();
                let hist: Vec<String> = [0usize, 10, 30, 100, 200, 299]
                    .iter()
                    .map(|&e| format!("{e}:{:.2}", cell.history.val_mse[e].sqrt() * 32.0))
                    .collect();
                println!(
                    "l2={l2:.0e} 2d {name} C=1: rmse_x2={:.4} val_px={} wall={:.0}s",
                    cell.report.rmse_px * 2.0,
                    hist.join(" "),
                    t0.elapsed().as_secs_f64()
                );
            }
        }
        "2dseeds" => {
            let c: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(1);
            for s in 0..5u64 {
                let seeds = (11 + 1000 * s, 12 + 1000 * s, 13 + 1000 * s);
                let t0 = Instant::now();
                let cell = protocol::table2_cell_probe(PolarityMode::Both, c, seeds).unwrap();
                println!(
                    "seeds#{s} 2d both C={c}: rmse_px={:.4} (x2 = {:.4}) wall={:.0}s",
                    cell.report.rmse_px, cell.report.rmse_px * 2.0,
                    t0.elapsed().as_secs_f64()
                );
            }
        }
        "seeds" => {
            let l2: f64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(1e-4);
            for (pol, name) in [(PolarityMode::Both, "both"), (PolarityMode::PositiveOnly, "pos")] {
                for sn in [0.0, 10.0 / 255.0] {
                    for s in 0..5u64 {
                        let seeds = (11 + 1000 * s, 12 + 1000 * s, 13 + 1000 * s);
                        let cell = protocol::table1_cell_probe(pol, sn, l2, seeds).unwrap();
                        println!(
                            "seeds#{s} l2={l2:.0e} 1d {name} sigma_n={sn:.4}: rmse_px={:.4}",
                            cell.report.rmse_px
                        );
                    }
                }
            }
        }
        "1d" => {
            for (pol, name) in [(PolarityMode::PositiveOnly, "pos"), (PolarityMode::Both, "both")] {
                for sn in [0.0, 5.0 / 255.0, 10.0 / 255.0] {
                    let t0 = Instant::now();
                    let cell = protocol::table1_cell(pol, sn).unwrap();
                    println!(
                        "1d {name} sigma_n={sn:.4}: rmse_px={:.4} best_epoch={} wall={:.1}s",
                        cell.report.rmse_px,
                        cell.history.best_epoch,
                        t0.elapsed().as_secs_f64()
                    );
                }
            }
        }
        "2d" => {
            let c: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(1);
            for (pol, name) in [(PolarityMode::PositiveOnly, "pos"), (PolarityMode::Both, "both")] {
                let t0 = Instant::now();
                let cell = protocol::table2_cell(pol, c).unwrap();
                println!(
                    "2d {name} C={c}: rmse_px={:.4} best_epoch={} wall={:.1}s",
                    cell.report.rmse_px,
                    cell.history.best_epoch,
                    t0.elapsed().as_secs_f64()
                );
            }
        }
        "res" => {
            for d in [32usize, 64, 128] {
                let t0 = Instant::now();
                let cell = protocol::resolution_cell(d).unwrap();
                println!(
                    "res D={d}: rmse_px={:.4} rmse_unit={:.6} wall={:.1}s",
                    cell.report.rmse_px,
                    cell.report.rmse_unit(),
                    t0.elapsed().as_secs_f64()
                );
            }
        }
        _ => eprintln!("unknown probe"),
    }
}
