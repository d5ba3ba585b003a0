//! Runs the full pipeline on the bundled dataset and lists the artifacts.
//!
//!     cargo run --example pipeline -- [OUT_DIR]

use spillover::pipeline::{run_pipeline, PipelineConfig};

fn main() -> spillover::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "out".to_string());
    let config_path = format!("{}/data/pipeline.toml", env!("CARGO_MANIFEST_DIR"));
    let config = PipelineConfig::load(&config_path)?;
    let manifest = run_pipeline(&config, Some(std::path::Path::new(&out)))?;

    println!("configuration hash: {}", manifest.config_hash);
    for stage in &manifest.stages {
        println!("{:<22} -> {}", stage.name, stage.artifacts.join(", "));
    }
    println!("artifacts written to {out}/");
    Ok(())
}
