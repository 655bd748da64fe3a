use anyhow::{Context, Result};
use mmresp_core::io::write_cube;
use mmresp_core::sim::synthesize_cube;

use crate::args::SimulateArgs;
use crate::manifest::{create_dir, Artifact, RunManifest};

pub fn run(args: SimulateArgs) -> Result<()> {
    let mut cfg = args.config.load()?;
    if let Some(seed) = args.seed {
        cfg.scene.seed = seed;
    }
    cfg.validate()?;
    let layout = cfg.layout()?;
    create_dir(&args.out)?;
    let mut manifest = RunManifest::new("simulate", cfg.clone(), Some(cfg.scene.seed));
    for radar in 0..cfg.scene.radar_positions.len() {
        let cube = synthesize_cube(&cfg.scene, &layout, &cfg.radar, radar)
            .with_context(|| format!("simulating radar {}", radar + 1))?;
        let name = format!("radar{}.rcub", radar + 1);
        write_cube(&args.out.join(&name), &cube)?;
        eprintln!(
            "radar {}: {} frames x {} samples x {} channels -> {name}",
            radar + 1,
            cube.n_slow(),
            cube.n_fast(),
            cube.n_channels()
        );
        manifest.artifacts.push(Artifact { radar: Some(radar + 1), ..Artifact::new("cube", name) });
    }
    manifest.write(&args.out.join("manifest.json"))
}
