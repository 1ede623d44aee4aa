"""Shared brute-force oracles.  They share no code with the package."""
from __future__ import annotations

import random

import pytest


def brute_factors(words, n: int) -> set[str]:
    out = set()
    for w in words:
        out.update(w[i : i + n] for i in range(len(w) - n + 1))
    return out


def brute_profile(word: str, n_max: int) -> list[int]:
    return [len(brute_factors([word], n)) for n in range(n_max + 1)]


def apply_images(images, word: str) -> str:
    return "".join(images[int(c) - 1] for c in word)


def brute_expand(image_list, letter: str = "1") -> str:
    """Right-to-left application: image_list[0] is applied last."""
    w = letter
    for imgs in reversed(image_list):
        w = apply_images(imgs, w)
    return w


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261017)
