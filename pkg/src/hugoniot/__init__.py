"""Finite-volume solver kit for compressible Euler and Navier-Stokes flows.

Central flux schemes with smart numerical diffusion (LLF, RICCA,
MOVERS-n, MOVERS+), an exact Riemann oracle, MUSCL reconstruction,
structured multiblock grids, explicit time marching and a benchmark
harness with a CLI (`hugoniot run/sweep/oracle/list/bench`).
"""

from .errors import (ConfigError, ConvergenceFailure, DegenerateCell, Diverged,
                     GridMismatch, NonPhysicalState, SolverError, UnknownCase)
from .gas import (ConservedState, FluxVector, GasModel, PrimitiveState,
                  conserved_to_primitive, euler_flux_normal, max_wave_speed,
                  primitive_to_conserved, sound_speed)
from .riemann import RiemannFan, sample, solve_star
from .schemes import (DiffusionCoefficient, DiffusiveFlux, EigenBounds,
                      InterfaceAverages, InterfaceInput, SchemeConfig,
                      assemble_interface_flux, interface_flux, llf_diffusion,
                      movers_alpha, movers_plus_diffusion, ricca_alpha,
                      shock_sensor)
from .reconstruction import ReconstructionConfig, minmod, reconstruct_faces
from .grid import (BlockBoundaries, Inflow, Link, NoSlipWall, Outflow, Segment,
                   SlipWall, StructuredGrid, Symmetry, TimeDependent)
from .solver import Block, Domain, apply_boundary_conditions, cfl_timestep, compute_residual
from .viscous import (FaceGradient, green_gauss_gradient, sutherland_mu,
                      viscous_face_flux)
from .timestepping import DriveResult, MarchConfig, drive, step_euler, step_rk3
from .cases import CaseSpec, case_names, registry_lookup
from .runner import ErrorReport, RunResult, error_norms, run_case, sweep

__version__ = "0.1.0"
