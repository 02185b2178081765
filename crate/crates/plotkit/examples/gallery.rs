//! Writes one SVG per plot kind into the given directory.

use plotkit::statplot::{self, HeatmapOptions};
use plotkit::{BarOptions, BoxOptions, Figure, LineOptions, ScatterOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| ".".into());
    std::fs::create_dir_all(&dir)?;

    let fig = Figure::new();
    let ax = fig.add_subplot(1, 1, 0, 0)?;
    ax.bar(["a", "b", "c"], &[3.0, 5.0, 2.0], &BarOptions::default())?;
    ax.set_title("Bars");
    fig.savefig(format!("{dir}/bar.svg"))?;

    let fig = Figure::new();
    let axes = fig.subplots(1, 2)?;
    let x: Vec<f64> = (0..50).map(|i| i as f64 / 5.0).collect();
    let y: Vec<f64> = x.iter().map(|v| v.sin()).collect();
    axes[0].plot(&x, y.clone(), &LineOptions::default())?;
    axes[1].scatter(&x, &y, &ScatterOptions::default())?;
    fig.savefig(format!("{dir}/line_scatter.svg"))?;

    let fig = Figure::new();
    let ax = fig.add_subplot(1, 1, 0, 0)?;
    ax.boxplot(&[vec![1.0, 2.0, 3.0, 4.0, 20.0], vec![2.0, 3.0, 3.5, 5.0]], &BoxOptions::default())?;
    fig.savefig(format!("{dir}/box.svg"))?;

    let fig = Figure::new();
    let ax = fig.add_subplot(1, 1, 0, 0)?;
    statplot::heatmap(
        &[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]],
        &HeatmapOptions { ax: Some(ax), ..Default::default() },
    )?;
    fig.savefig(format!("{dir}/heatmap.svg"))?;
    Ok(())
}
