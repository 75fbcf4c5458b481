// Generates a small synthetic texture corpus, then runs the full protocol
// (4:1 split, grid search, final fit, test report) for two descriptors.
//
// `cargo run --release --example synthetic_protocol -- 100` uses 100
// images per class.

use texture_ensemble::pipeline::{run_protocol, write_synth_corpus, SynthOptions};
use texture_ensemble::{DescriptorConfig, GridSpec};

fn run_with(per_class: usize) -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let opts = SynthOptions {
        per_class,
        size: 144,
        seed: 7,
    };
    let manifest = write_synth_corpus(dir.path(), &opts)?;
    println!("{} images in {}", manifest.len(), dir.path().display());

    let grid = GridSpec::default();
    for name in ["LBP@16,2", "cogriWeberLBP@16,2"] {
        let cfg: DescriptorConfig = name.parse()?;
        let start = std::time::Instant::now();
        let report = run_protocol(&manifest, &cfg, &grid, opts.seed)?;
        println!("{report}({:.1?})\n", start.elapsed());
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run_with(10)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let per_class = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(10);
    run_with(per_class)
}
