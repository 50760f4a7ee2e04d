import wbpinn.config
import wbpinn.solver  # noqa: F401
