"""
Prometheus metrics for pricing runs.

Collectors live on a private registry so repeated service instances (tests,
batch runs) never collide. Nothing is served; the batch CLI can dump the
registry in the Prometheus text format.
"""
from pathlib import Path
from typing import Optional

import structlog
from prometheus_client import CollectorRegistry, Counter, Histogram, generate_latest, write_to_textfile

logger = structlog.get_logger(__name__)


class MetricsService:
    """
    Counters and histograms describing experiment work.
    """

    def __init__(self, registry: Optional[CollectorRegistry] = None):
        """
        Initialize metrics service with Prometheus collectors.

        Args:
            registry: Optional custom registry (useful for testing)
        """
        self.registry = registry or CollectorRegistry()

        self.experiments_total = Counter(
            'pricing_experiments_total',
            'Experiments run',
            ['method', 'status'],
            registry=self.registry
        )

        self.experiment_duration_seconds = Histogram(
            'pricing_experiment_duration_seconds',
            'Wall time of one experiment including damping optimization',
            ['method'],
            buckets=(0.001, 0.01, 0.05, 0.1, 0.5, 1, 5, 10, 30, 60, 300),
            registry=self.registry
        )

        self.integrand_evaluations_total = Counter(
            'pricing_integrand_evaluations_total',
            'Fourier integrand evaluations',
            ['method'],
            registry=self.registry
        )

        self.chf_evaluations_total = Counter(
            'pricing_chf_evaluations_total',
            'Characteristic function evaluations',
            ['method'],
            registry=self.registry
        )

        self.mc_samples_total = Counter(
            'pricing_mc_samples_total',
            'Monte Carlo samples drawn',
            ['model'],
            registry=self.registry
        )

    def record_experiment(self, method: str, status: str, duration: float) -> None:
        self.experiments_total.labels(method=method, status=status).inc()
        self.experiment_duration_seconds.labels(method=method).observe(duration)

    def record_work(self, method: str, integrand_evaluations: int = 0, chf_evaluations: int = 0) -> None:
        if integrand_evaluations:
            self.integrand_evaluations_total.labels(method=method).inc(integrand_evaluations)
        if chf_evaluations:
            self.chf_evaluations_total.labels(method=method).inc(chf_evaluations)

    def record_mc_samples(self, model: str, samples: int) -> None:
        self.mc_samples_total.labels(model=model).inc(samples)

    def export_text(self) -> bytes:
        """Registry in the Prometheus exposition format"""
        return generate_latest(self.registry)

    def write(self, path: Path) -> None:
        write_to_textfile(str(path), self.registry)
        logger.info("metrics_written", path=str(path))
