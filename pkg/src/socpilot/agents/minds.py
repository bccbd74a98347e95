"""Mental state: emotions on six dimensions, per-topic attitudes, thought."""

from __future__ import annotations

from dataclasses import dataclass, field

from socpilot.gateway.scripted import EMOTION_DIMENSIONS, EMOTION_WORDS


def _clamp10(value: int) -> int:
    return max(0, min(10, int(value)))


@dataclass
class EmotionState:
    sadness: int = 5
    joy: int = 5
    fear: int = 5
    disgust: int = 5
    anger: int = 5
    surprise: int = 5
    emotion_word: str = "Relief"
    conclusion: str = ""

    def __post_init__(self):
        for dim in EMOTION_DIMENSIONS:
            setattr(self, dim, _clamp10(getattr(self, dim)))
        if self.emotion_word not in EMOTION_WORDS:
            raise ValueError(f"{self.emotion_word!r} is not in the emotion word catalog")

    def intensities(self) -> dict[str, int]:
        return {dim: getattr(self, dim) for dim in EMOTION_DIMENSIONS}

    def summary(self) -> str:
        return ", ".join(f"{dim}: {value}" for dim, value in self.intensities().items())

    @classmethod
    def from_record(cls, record: dict) -> "EmotionState":
        # defense in depth: the gateway already range-checked, clamp anyway
        return cls(
            **{dim: _clamp10(record[dim]) for dim in EMOTION_DIMENSIONS},
            emotion_word=record["word"],
            conclusion=str(record.get("conclusion", "")),
        )

    def to_dict(self) -> dict:
        data = self.intensities()
        data["emotion_word"] = self.emotion_word
        data["conclusion"] = self.conclusion
        return data

    @classmethod
    def from_dict(cls, raw: dict) -> "EmotionState":
        raw = dict(raw)
        word = raw.pop("emotion_word")
        conclusion = raw.pop("conclusion", "")
        return cls(**raw, emotion_word=word, conclusion=conclusion)


@dataclass
class Attitude:
    topic: str
    rating: int

    def __post_init__(self):
        if not 0 <= self.rating <= 10:
            raise ValueError(f"attitude rating {self.rating} outside 0-10")


@dataclass
class Thought:
    text: str = ""
    updated_at: str = ""

    def display(self) -> str:
        return self.text or "(no recorded thought yet)"

    def to_dict(self) -> dict:
        return {"text": self.text, "updated_at": self.updated_at}
