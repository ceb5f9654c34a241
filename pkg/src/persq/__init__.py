"""persq: personal sleep-quality monitoring and lifestyle feedback from lifelogs.

Subpackages map onto the pipeline stages: ingest -> features -> model ->
evaluation, with mining + feedback on the side and service/cli on top.
"""

from .model.backend import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
