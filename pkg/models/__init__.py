from .value_range import ValueRange
from .bmp import BmpHeader, BmpImage
from .stego import PackedChannels, PayloadByte, StegoMetadata, Payload, InspectionReport
from .wav import RiffChunk, WavClip
from .echo import EchoParams, BitSequence, DelayEstimate
from .metrics import DistortionReport
from .cli import CliConfig, ActionSummary

__all__ = [
    "ValueRange",
    "BmpHeader",
    "BmpImage",
    "PackedChannels",
    "PayloadByte",
    "StegoMetadata",
    "Payload",
    "InspectionReport",
    "RiffChunk",
    "WavClip",
    "EchoParams",
    "BitSequence",
    "DelayEstimate",
    "DistortionReport",
    "CliConfig",
    "ActionSummary"
]
