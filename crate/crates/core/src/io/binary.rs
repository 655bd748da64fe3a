//! Little-endian binary containers for data cubes and image sequences.

use std::fs::File;
use std::io::{BufReader, BufWriter, ErrorKind, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::imaging::{ImageSequence, PolarGrid};
use crate::sim::{build_virtual_array, DataCube, GroundTruth, RadarParams, UniformAxis};

pub const CUBE_MAGIC: &[u8; 8] = b"RCUB1\0\0\0";
pub const IMAGE_MAGIC: &[u8; 8] = b"RIMG1\0\0\0";

/// Frames written per buffered chunk.
const CHUNK: usize = 1 << 16;

struct Writer<W: Write>(W);

impl<W: Write> Writer<W> {
    fn u64(&mut self, v: usize) -> Result<()> {
        Ok(self.0.write_all(&(v as u64).to_le_bytes())?)
    }

    fn f64(&mut self, v: f64) -> Result<()> {
        Ok(self.0.write_all(&v.to_le_bytes())?)
    }

    fn f64s(&mut self, v: &[f64]) -> Result<()> {
        v.iter().try_for_each(|x| self.f64(*x))
    }

    /// Complex samples as interleaved single-precision pairs.
    fn complex(&mut self, v: &[Complex64]) -> Result<()> {
        let mut buf = Vec::with_capacity(CHUNK * 8);
        for chunk in v.chunks(CHUNK) {
            buf.clear();
            for z in chunk {
                buf.extend_from_slice(&(z.re as f32).to_le_bytes());
                buf.extend_from_slice(&(z.im as f32).to_le_bytes());
            }
            self.0.write_all(&buf)?;
        }
        Ok(())
    }
}

struct Reader<R: Read>(R);

fn truncated(e: std::io::Error) -> Error {
    if e.kind() == ErrorKind::UnexpectedEof {
        Error::CorruptFile("file is truncated".into())
    } else {
        Error::Io(e)
    }
}

impl<R: Read> Reader<R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N]> {
        let mut b = [0u8; N];
        self.0.read_exact(&mut b).map_err(truncated)?;
        Ok(b)
    }

    fn u64(&mut self) -> Result<usize> {
        usize::try_from(u64::from_le_bytes(self.bytes()?))
            .map_err(|_| Error::CorruptFile("count does not fit in memory".into()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.bytes()?))
    }

    fn f64s(&mut self, n: usize) -> Result<Vec<f64>> {
        (0..n).map(|_| self.f64()).collect()
    }

    fn complex(&mut self, n: usize) -> Result<Vec<Complex64>> {
        let mut out = Vec::with_capacity(n);
        let mut buf = vec![0u8; CHUNK * 8];
        let mut left = n;
        while left > 0 {
            let m = left.min(CHUNK);
            self.0.read_exact(&mut buf[..m * 8]).map_err(truncated)?;
            for p in buf[..m * 8].chunks_exact(8) {
                let re = f32::from_le_bytes([p[0], p[1], p[2], p[3]]);
                let im = f32::from_le_bytes([p[4], p[5], p[6], p[7]]);
                out.push(Complex64::new(re as f64, im as f64));
            }
            left -= m;
        }
        Ok(out)
    }

    fn magic(&mut self, expected: &[u8; 8]) -> Result<()> {
        let m: [u8; 8] = self.bytes()?;
        if &m != expected {
            return Err(Error::CorruptFile(format!(
                "bad magic {:?}, expected {:?}",
                String::from_utf8_lossy(&m),
                String::from_utf8_lossy(expected)
            )));
        }
        Ok(())
    }

    fn finish(mut self) -> Result<()> {
        let mut extra = [0u8; 1];
        match self.0.read(&mut extra)? {
            0 => Ok(()),
            _ => Err(Error::CorruptFile("trailing bytes after payload".into())),
        }
    }
}

/// Header counts are checked against this before allocating.
const MAX_ELEMENTS: usize = 1 << 34;

fn checked_product(dims: &[usize]) -> Result<usize> {
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&n| n <= MAX_ELEMENTS)
        .ok_or_else(|| Error::CorruptFile(format!("implausible dimensions {dims:?}")))
}

/// Layout: magic; `n_slow, n_fast, n_tx, n_rx` as u64; centre frequency,
/// bandwidth, chirp duration, slow-time rate, duration, slow-time start and
/// fast-time start as f64; transmitter then receiver positions; samples as
/// f32 (re, im) pairs in `[slow][fast][channel]` order; the true interval
/// (NaN where undefined) and the motion mask (0 or 1) per slow-time sample.
pub fn write_cube(path: &Path, cube: &DataCube) -> Result<()> {
    cube.validate()?;
    let mut w = Writer(BufWriter::new(File::create(path)?));
    w.0.write_all(CUBE_MAGIC)?;
    let p = &cube.params;
    w.u64(cube.n_slow())?;
    w.u64(cube.n_fast())?;
    w.u64(cube.layout.tx_positions.len())?;
    w.u64(cube.layout.rx_positions.len())?;
    w.f64s(&[
        p.center_frequency,
        p.bandwidth,
        p.chirp_duration,
        p.slow_time_rate,
        p.duration,
        cube.slow_time.start,
        cube.fast_time.start,
    ])?;
    w.f64s(&cube.layout.tx_positions)?;
    w.f64s(&cube.layout.rx_positions)?;
    w.complex(&cube.samples)?;
    w.f64s(&cube.ground_truth.interval)?;
    let mask: Vec<f64> = cube.ground_truth.motion_active.iter().map(|&a| if a { 1.0 } else { 0.0 }).collect();
    w.f64s(&mask)?;
    w.0.flush()?;
    Ok(())
}

pub fn read_cube(path: &Path) -> Result<DataCube> {
    let mut r = Reader(BufReader::new(File::open(path)?));
    r.magic(CUBE_MAGIC)?;
    let (n_slow, n_fast, n_tx, n_rx) = (r.u64()?, r.u64()?, r.u64()?, r.u64()?);
    let total = checked_product(&[n_slow, n_fast, n_tx, n_rx])?;
    checked_product(&[n_tx, n_rx])?;
    let v = r.f64s(7)?;
    let params = RadarParams {
        center_frequency: v[0],
        bandwidth: v[1],
        chirp_duration: v[2],
        fast_time_samples: n_fast,
        slow_time_rate: v[3],
        duration: v[4],
    };
    params.validate().map_err(|e| Error::CorruptFile(format!("invalid radar parameters: {e}")))?;
    if params.slow_time_samples() != n_slow {
        return Err(Error::CorruptFile(format!(
            "{n_slow} frames recorded but parameters imply {}",
            params.slow_time_samples()
        )));
    }
    let tx = r.f64s(n_tx)?;
    let rx = r.f64s(n_rx)?;
    let layout = build_virtual_array(&tx, &rx, params.wavelength())
        .map_err(|e| Error::CorruptFile(format!("invalid array layout: {e}")))?;
    let samples = r.complex(total)?;
    let interval = r.f64s(n_slow)?;
    let motion_active = r.f64s(n_slow)?.into_iter().map(|m| m != 0.0).collect();
    r.finish()?;
    let cube = DataCube {
        samples,
        slow_time: UniformAxis::new(v[5], 1.0 / params.slow_time_rate, n_slow),
        fast_time: UniformAxis::new(v[6], params.fast_time_step(), n_fast),
        layout,
        params,
        ground_truth: GroundTruth { interval, motion_active },
    };
    cube.validate()?;
    Ok(cube)
}

/// Layout: magic; `n_slow, n_range, n_angle, clutter_removed` as u64;
/// slow-time start, slow-time step and wavelength as f64; range bins (m);
/// angle bins (degrees); samples as f32 (re, im) pairs in
/// `[slow][range][angle]` order.
pub fn write_image(path: &Path, img: &ImageSequence) -> Result<()> {
    img.validate()?;
    let mut w = Writer(BufWriter::new(File::create(path)?));
    w.0.write_all(IMAGE_MAGIC)?;
    w.u64(img.slow_time.len)?;
    w.u64(img.grid.n_range())?;
    w.u64(img.grid.n_angle())?;
    w.u64(img.clutter_removed as usize)?;
    w.f64s(&[img.slow_time.start, img.slow_time.step, img.wavelength])?;
    w.f64s(&img.grid.range_bins)?;
    w.f64s(&img.grid.angle_bins)?;
    w.complex(&img.values)?;
    w.0.flush()?;
    Ok(())
}

pub fn read_image(path: &Path) -> Result<ImageSequence> {
    let mut r = Reader(BufReader::new(File::open(path)?));
    r.magic(IMAGE_MAGIC)?;
    let (n_slow, n_range, n_angle, flag) = (r.u64()?, r.u64()?, r.u64()?, r.u64()?);
    let total = checked_product(&[n_slow, n_range, n_angle])?;
    let v = r.f64s(3)?;
    let grid = PolarGrid::new(r.f64s(n_range)?, r.f64s(n_angle)?)
        .map_err(|e| Error::CorruptFile(format!("invalid grid: {e}")))?;
    let values = r.complex(total)?;
    r.finish()?;
    let img = ImageSequence {
        values,
        grid,
        slow_time: UniformAxis::new(v[0], v[1], n_slow),
        wavelength: v[2],
        clutter_removed: flag != 0,
    };
    img.validate()?;
    Ok(img)
}
