//! File formats for cubes, images, interval series and metrics.

mod binary;
mod csv;

pub use binary::{read_cube, read_image, write_cube, write_image, CUBE_MAGIC, IMAGE_MAGIC};
pub use csv::{
    format_interval_csv, format_metrics_csv, format_metrics_table, read_interval_csv, read_truth_csv,
    write_intensity_csv, write_interval_csv, write_metrics_csv, write_pairs_csv, write_truth_csv,
    INTERVAL_HEADER, METRICS_HEADER, TRUTH_HEADER,
};
