//! Level-set movies of a sweep and disjoint-disk placements for them.

mod census;
mod disks;
mod movie;

pub use census::{
    bundled_census, bundled_movie, census, load_movie, CensusReport, BUNDLED_MOVIE, EXPECTED_CENSUS,
};
pub use disks::{
    assign_disks, embedding_certificate, CertificateError, CertificateReport, Disk, DiskPlacement,
    IntervalPlacement, Keyframe, Track,
};

pub use movie::{
    movie_to_json, parse_movie, random_movie, validate_movie, Event, Life, MovieError, RawMovie,
    SweepMovie, TimedEvent,
};
