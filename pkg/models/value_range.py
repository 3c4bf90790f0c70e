from enum import Enum

class ValueRange(int, Enum):
    BYTE=255
    SAMPLE=32767
