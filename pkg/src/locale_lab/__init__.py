"""locale-lab: finite frames, sublocales, and localic measure on [0,1]."""

from locale_lab.frames import (
    Frame,
    FrameError,
    FrameSpec,
    SpecError,
    TopologySpec,
    build_frame,
)

__all__ = [
    "Frame",
    "FrameError",
    "FrameSpec",
    "SpecError",
    "TopologySpec",
    "build_frame",
]
