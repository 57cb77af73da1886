from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    PROJECT_NAME: str = "Grating FWM Simulator"
    LOG_LEVEL: str = "INFO"
    LOG_FILE: str = ""  # empty = stream only

    # Sweep worker pool
    FWM_WORKERS: int = 1

    # Integrator defaults (frequencies in units of the first drive ω)
    FWM_RK_METHOD: str = "RK45"
    FWM_REL_TOL: float = 1e-9
    FWM_ABS_TOL: float = 1e-12
    FWM_STEADY_RESIDUAL_TOL: float = 1e-10

    # Weak-conversion pump amplitude used by the presets
    FWM_DEFAULT_PUMP: float = 1e-3

    class Config:
        env_file = ".env"
        extra = "ignore"

    def get_workers(self, override: int = 0) -> int:
        return max(1, override or self.FWM_WORKERS)


settings = Settings()
