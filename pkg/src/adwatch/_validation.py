"""Argument checks shared by the estimators and configs."""

import numbers


def check_positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_positive_real(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Real) or not value > 0:
        raise ValueError(f"{name} must be a positive real, got {value!r}")
    return float(value)


def check_documents(X):
    """Accept a Corpus or a sequence of strings; reject bare strings and other types."""
    from .topics import Corpus

    if isinstance(X, Corpus):
        return X
    if isinstance(X, (str, bytes)):
        raise TypeError("expected a sequence of documents, got a single string")
    try:
        docs = list(X)
    except TypeError:
        raise TypeError(f"expected a sequence of documents, got {type(X).__name__}") from None
    bad = [type(d).__name__ for d in docs if not isinstance(d, str)]
    if bad:
        raise TypeError(f"documents must be str, got {bad[0]}")
    return docs
