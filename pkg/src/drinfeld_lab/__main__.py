from drinfeld_lab.cli import main

raise SystemExit(main())
