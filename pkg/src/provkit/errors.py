"""Exception hierarchy shared across the platform."""


class ProvKitError(Exception):
    """Base class for all platform errors."""


class ValidationError(ProvKitError):
    """Input failed domain validation (bad URL, bad enum value, ...)."""


class IngestionSourceError(ProvKitError):
    """The monitor fixture feed is missing or unreadable."""


class LedgerError(ProvKitError):
    """Chain or blob-store read/write failure."""


class CorpusIndexError(ProvKitError):
    """Trusted-article index rejected a document."""


class MediaError(ProvKitError):
    """Unsupported or corrupt raster media."""


class StoreError(ProvKitError):
    """Knowledge-graph store rejected a transaction."""


class ConfigError(ProvKitError):
    """Configuration file or environment override is invalid."""


class DispatchError(ProvKitError):
    """An analyzer could not be reached or returned garbage."""
