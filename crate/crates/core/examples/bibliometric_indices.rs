// h, h², h_alpha and w indices on ranked profiles, and custom curve tables.

use ranking_metrics::bibliometric::{
    build_profile, srm_rank, CustomCurves, PerfCurveFamily, RankedProfile,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = RankedProfile::from_counts(&[5, 4, 3, 2, 1])?;
    for fam in [
        PerfCurveFamily::H,
        PerfCurveFamily::H2,
        PerfCurveFamily::h_alpha(0.5)?,
        PerfCurveFamily::W,
    ] {
        println!("{:>10}: {}", fam.name(), srm_rank(&x, &fam));
    }

    // expected returns and weights per portfolio -> rescaled integer profiles
    let expected = vec![vec![0.04, -0.01], vec![0.02, 0.01]];
    let weights = vec![vec![0.5, 0.5]; 2];
    for p in build_profile(&expected, &weights)? {
        println!(
            "profile {:?} -> h = {}",
            p.values(),
            srm_rank(&p, &PerfCurveFamily::H)
        );
    }

    // level, rank, value
    let curves = CustomCurves::parse("1,1,1\n2,1,3\n2,2,1\n3,1,6\n3,2,3\n3,3,1\n")?;
    println!("custom: {}", srm_rank(&x, &PerfCurveFamily::Custom(curves)));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
