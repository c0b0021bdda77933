from .csv_extractor import CsvSeriesExtractor, SeriesColumn, load_series_csv, write_series_csv
from .errors import (
    HorizonMismatch,
    MissingColumn,
    MixedUnits,
    NegativeLoad,
    TimeSeriesError,
    UnknownUnit,
    UnparseableValue,
)
from .series import (
    GROUND_TEMPERATURE,
    HOURS_PER_DAY,
    HOURS_PER_YEAR,
    INSOLATION,
    OUTDOOR_TEMPERATURE,
    REGIONAL_LOAD,
    REQUIRED_SERIES,
    SPOT_PRICE,
    TimeSeriesSet,
    hour_of_day,
)
